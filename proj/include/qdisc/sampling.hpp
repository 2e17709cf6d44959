#pragma once

#include "qdisc/discrimination.hpp"

#include <cstdint>
#include <random>

namespace qdisc {

/// Deterministic generators for random operators, POVMs and ensembles.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double gaussian();
  Eigen::Vector3d unitVector();

  Matrix ginibre(int dim);          // complex Gaussian entries
  Matrix hermitian(int dim, double scale = 1.0);
  Matrix psd(int dim);              // G G^dag
  Matrix density(int dim);          // normalized PSD
  Matrix pureQubit();               // projector onto a Bloch-sphere point

  /// E_j = S^{-1/2} G_j S^{-1/2} with S the sum of random PSD G_j.
  Povm povm(int n, int dim);

  WeightedEnsemble ensemble(int n, int dim);
  WeightedEnsemble pureQubitEnsemble(int n, bool equiprobable);

  /// 0 <= Q <= 1, drawn uniformly in the feasible Bloch region for qubits.
  QubitQ qubitQ();

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Three equiprobable pure states on the Bloch equator at the given angles.
WeightedEnsemble equatorialTriple(double phi2, double phi3);

/// Symmetric trine: angles 0, 2pi/3, 4pi/3.
WeightedEnsemble trineEnsemble();

/// Equiprobable BB84 states |0>, |1>, |+>, |->.
WeightedEnsemble bb84Ensemble();

/// The trine POVM {(2/3)|psi_j><psi_j|}.
Povm trinePovm();

}  // namespace qdisc
