#include "qdisc/oracle.hpp"

#include "qdisc/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace qdisc {

namespace {

// Branch contribution 1/2 (Tr[P Sigma] + |sqrtP Delta sqrtP|_1) in Bloch
// coefficients; (cq, dotSigma, dotDelta, rq2) describe the branch operator
// P and its contractions with Sigma and Delta.
double branchValue(double cq, double rq2, double cSigma, double dotSigma, double cDelta,
                   double dotDelta, double rDelta2) {
  const double t1 = cq * cSigma + dotSigma;
  const double cd = cq * cDelta + dotDelta;
  const double r2 = cd * cd + (rDelta2 - cDelta * cDelta) * (cq * cq - rq2);
  const double rd = std::sqrt(std::max(r2, 0.0));
  return t1 + 0.5 * (std::abs(cd + rd) + std::abs(cd - rd));
}

}  // namespace

double bruteForceNested(const WeightedEnsemble& e, const GridSpec& grid) {
  requireValidEnsemble(e);
  if (e.dim() != 2) throw UnsupportedDimension("brute force grid is defined for qubits");
  const int n = e.size();
  if (n != 3 && n != 4) throw SizeMismatch("bruteForceNested expects 3 or 4 states");
  if (grid.resolution < 2) throw Error("grid resolution must be at least 2");
  const int res = grid.resolution;

  BlochOperator w[4];
  for (int j = 0; j < n; ++j) {
    w[j] = toBloch(e.states[static_cast<size_t>(j)].weighted());
  }
  const BlochOperator sigma0{w[0].c + w[2].c, w[0].r + w[2].r};
  const BlochOperator delta0{w[0].c - w[2].c, w[0].r - w[2].r};
  const BlochOperator sigma1{w[1].c + w[3].c, w[1].r + w[3].r};
  const BlochOperator delta1{w[1].c - w[3].c, w[1].r - w[3].r};
  const double rDelta0sq = delta0.r.squaredNorm();
  const double rDelta1sq = delta1.r.squaredNorm();

  // Unit directions with their contractions against the four Bloch vectors.
  struct Dir {
    double s0, d0, s1, d1;
  };
  std::vector<Dir> dirs;
  dirs.reserve(static_cast<size_t>((res + 1) * res));
  for (int ui = 0; ui <= res; ++ui) {
    const double u = -1.0 + 2.0 * ui / res;
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    for (int mi = 0; mi < res; ++mi) {
      const double phi = 2.0 * M_PI * mi / res;
      const Eigen::Vector3d dir(s * std::cos(phi), s * std::sin(phi), u);
      dirs.push_back({dir.dot(sigma0.r), dir.dot(delta0.r), dir.dot(sigma1.r), dir.dot(delta1.r)});
    }
  }

  double best = 0.0;
  for (int ci = 0; ci <= res; ++ci) {
    const double c = static_cast<double>(ci) / res;
    const double rmax = std::min(c, 1.0 - c);
    for (int ti = 0; ti <= res; ++ti) {
      const double rad = rmax * ti / res;
      const double rq2 = rad * rad;
      if (rad == 0.0) {
        const double value = branchValue(c, 0.0, sigma0.c, 0.0, delta0.c, 0.0, rDelta0sq) +
                             branchValue(1.0 - c, 0.0, sigma1.c, 0.0, delta1.c, 0.0, rDelta1sq);
        best = std::max(best, value);
        continue;
      }
      for (const Dir& dir : dirs) {
        const double value =
            branchValue(c, rq2, sigma0.c, rad * dir.s0, delta0.c, rad * dir.d0, rDelta0sq) +
            branchValue(1.0 - c, rq2, sigma1.c, -rad * dir.s1, delta1.c, -rad * dir.d1, rDelta1sq);
        best = std::max(best, value);
      }
    }
  }
  return best;
}

namespace {

// Radius of the minimal enclosing circle of three points (within their
// plane): circumradius for acute triangles, half the longest side otherwise.
double minimalEnclosingRadius(const Eigen::Vector3d& v0, const Eigen::Vector3d& v1,
                              const Eigen::Vector3d& v2) {
  const double d01 = (v1 - v0).norm();
  const double d02 = (v2 - v0).norm();
  const double d12 = (v2 - v1).norm();

  double longest = d01, a = d02, b = d12;
  if (d02 > longest) { longest = d02; a = d01; b = d12; }
  if (d12 > longest) { longest = d12; a = d01; b = d02; }
  if (longest <= 0.0) return 0.0;
  if (a * a + b * b <= longest * longest + 1e-12) {
    return 0.5 * longest;  // right/obtuse or degenerate
  }
  const double area = 0.5 * (v1 - v0).cross(v2 - v0).norm();
  return d01 * d02 * d12 / (4.0 * area);
}

bool tetrahedronContainsOrigin(const std::vector<Eigen::Vector3d>& vs) {
  Eigen::Matrix4d m;
  for (int j = 0; j < 4; ++j) {
    m.block<3, 1>(0, j) = vs[static_cast<size_t>(j)];
    m(3, j) = 1.0;
  }
  const Eigen::Vector4d rhs(0.0, 0.0, 0.0, 1.0);
  const Eigen::FullPivLU<Eigen::Matrix4d> lu(m);
  if (!lu.isInvertible()) return false;
  const Eigen::Vector4d lambda = lu.solve(rhs);
  return lambda.minCoeff() >= -1e-9;
}

}  // namespace

PolytopeResult polytopeRatioProbability(const WeightedEnsemble& e) {
  requireValidEnsemble(e);
  if (e.dim() != 2) throw UnsupportedDimension("polytope rule is defined for qubits");
  const int n = e.size();
  if (n != 3 && n != 4) throw UnsupportedN("polytope rule implemented for N = 3, 4");

  std::vector<Eigen::Vector3d> vs;
  for (const WeightedState& ws : e.states) {
    if (std::abs(ws.p - 1.0 / n) > 1e-9) throw NotEquiprobable("states must be equiprobable");
    const BlochOperator b = toBloch(ws.rho);
    if (std::abs(2.0 * b.radius() - 1.0) > 1e-8) throw NotPure("states must be pure");
    vs.push_back(2.0 * b.r);  // unit Bloch vector
  }

  PolytopeResult out;
  if (n == 3) {
    const double radius = std::min(minimalEnclosingRadius(vs[0], vs[1], vs[2]), 1.0);
    out.probability = (1.0 + radius) / 3.0;
    out.heuristic = false;
    return out;
  }
  // N = 4: largest-side-to-diameter rule, not established by the geometry
  // beyond triangles.
  out.heuristic = true;
  if (tetrahedronContainsOrigin(vs)) {
    out.probability = 0.5;  // R = 1/N
    return out;
  }
  double longest = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      longest = std::max(longest, (vs[static_cast<size_t>(i)] - vs[static_cast<size_t>(j)]).norm());
    }
  }
  out.probability = 0.25 + longest / 8.0;
  return out;
}

double randomPovmSearch(const WeightedEnsemble& e, int trials, std::uint64_t seed) {
  Sampler sampler(seed);
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Povm m = sampler.povm(e.size(), e.dim());
    best = std::max(best, successProbability(e, m));
  }
  return best;
}

bool triangleContainsOrigin(const Eigen::Vector2d& p0, const Eigen::Vector2d& p1,
                            const Eigen::Vector2d& p2) {
  const Eigen::Vector2d pts[3] = {p0, p1, p2};
  bool nonNegative = true;
  bool nonPositive = true;
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector2d edge = pts[(i + 1) % 3] - pts[i];
    const double cross = edge.x() * (-pts[i].y()) - edge.y() * (-pts[i].x());
    if (cross < -1e-12) nonNegative = false;
    if (cross > 1e-12) nonPositive = false;
  }
  return nonNegative || nonPositive;
}

}  // namespace qdisc
