#pragma once

#include "qdisc/discrimination.hpp"

#include <cstdint>

namespace qdisc {

/// Dyadic grid: each parameter range is split into `resolution` equal
/// intervals, so doubling the resolution keeps every existing grid point.
struct GridSpec {
  int resolution = 40;
};

/// Lower bound on the optimal probability for 3 or 4 qubit states:
/// exhaustive grid over feasible Q with exact conditional Helstrom values
/// per branch, evaluated in Bloch coefficients.
double bruteForceNested(const WeightedEnsemble& e, const GridSpec& grid);

struct PolytopeResult {
  double probability = 0.0;
  bool heuristic = false;  // true for the N = 4 largest-side rule
};

/// Geometric optimum for equiprobable pure qubit states: 1/N + R with R
/// the ratio of the weighted state polytope to its maximal similar copy in
/// the Bloch sphere. For N = 3 the maximal copy is fixed by the minimal
/// enclosing circle of the Bloch vectors (circumcircle for acute triangles,
/// longest side as a diameter otherwise).
PolytopeResult polytopeRatioProbability(const WeightedEnsemble& e);

/// Sanity floor: best success probability over random valid POVMs.
double randomPovmSearch(const WeightedEnsemble& e, int trials, std::uint64_t seed);

/// True when the origin lies in the closed triangle spanned by three
/// coplanar 2D points (used for the equatorial sweeps).
bool triangleContainsOrigin(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1,
                            const Eigen::Vector2d& p2);

}  // namespace qdisc
