#include "qdisc/sampling.hpp"

#include <cmath>
#include <numeric>

namespace qdisc {

double Sampler::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

double Sampler::gaussian() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

Eigen::Vector3d Sampler::unitVector() {
  Eigen::Vector3d v;
  do {
    v = Eigen::Vector3d(gaussian(), gaussian(), gaussian());
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

Matrix Sampler::ginibre(int dim) {
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      m(i, j) = std::complex<double>(gaussian(), gaussian());
    }
  }
  return m;
}

Matrix Sampler::hermitian(int dim, double scale) {
  const Matrix g = ginibre(dim);
  return scale * 0.5 * (g + g.adjoint().eval());
}

Matrix Sampler::psd(int dim) {
  const Matrix g = ginibre(dim);
  return g * g.adjoint();
}

Matrix Sampler::density(int dim) {
  const Matrix p = psd(dim);
  return p / p.trace().real();
}

Matrix Sampler::pureQubit() {
  const Eigen::Vector3d v = unitVector();
  return fromBloch(BlochOperator{0.5, 0.5 * v});
}

Povm Sampler::povm(int n, int dim) {
  std::vector<Matrix> gs;
  Matrix sum = Matrix::Zero(dim, dim);
  for (int j = 0; j < n; ++j) {
    gs.push_back(psd(dim));
    sum += gs.back();
  }
  const Matrix renorm = pseudoInverseSqrt(sum);
  Povm out;
  for (const Matrix& g : gs) {
    out.elements.push_back(hermitize(renorm * g * renorm));
  }
  return out;
}

WeightedEnsemble Sampler::ensemble(int n, int dim) {
  WeightedEnsemble out;
  std::vector<double> weights;
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    weights.push_back(uniform(0.05, 1.0));
    total += weights.back();
  }
  for (int j = 0; j < n; ++j) {
    out.states.push_back({weights[static_cast<size_t>(j)] / total, density(dim)});
  }
  return out;
}

WeightedEnsemble Sampler::pureQubitEnsemble(int n, bool equiprobable) {
  WeightedEnsemble out;
  std::vector<double> weights(static_cast<size_t>(n), 1.0);
  if (!equiprobable) {
    for (double& w : weights) w = uniform(0.05, 1.0);
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (int j = 0; j < n; ++j) {
    out.states.push_back({weights[static_cast<size_t>(j)] / total, pureQubit()});
  }
  return out;
}

QubitQ Sampler::qubitQ() {
  const double c = uniform(0.0, 1.0);
  const double r = uniform(0.0, 1.0) * std::min(c, 1.0 - c);
  return QubitQ{c, r * unitVector()};
}

WeightedEnsemble equatorialTriple(double phi2, double phi3) {
  auto state = [](double phi) {
    return fromBloch(BlochOperator{0.5, 0.5 * Eigen::Vector3d(std::cos(phi), std::sin(phi), 0.0)});
  };
  WeightedEnsemble out;
  out.states = {{1.0 / 3.0, state(0.0)}, {1.0 / 3.0, state(phi2)}, {1.0 / 3.0, state(phi3)}};
  return out;
}

WeightedEnsemble trineEnsemble() { return equatorialTriple(2.0 * M_PI / 3.0, 4.0 * M_PI / 3.0); }

WeightedEnsemble bb84Ensemble() {
  auto state = [](const Eigen::Vector3d& v) { return fromBloch(BlochOperator{0.5, 0.5 * v}); };
  WeightedEnsemble out;
  out.states = {{0.25, state({0, 0, 1})},
                {0.25, state({0, 0, -1})},
                {0.25, state({1, 0, 0})},
                {0.25, state({-1, 0, 0})}};
  return out;
}

Povm trinePovm() {
  const WeightedEnsemble trine = trineEnsemble();
  Povm out;
  for (const WeightedState& ws : trine.states) {
    out.elements.push_back((2.0 / 3.0) * ws.rho);
  }
  return out;
}

}  // namespace qdisc
