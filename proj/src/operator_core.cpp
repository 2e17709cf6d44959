#include "qdisc/operator_core.hpp"

#include <cmath>

namespace qdisc {

namespace {

Matrix makePauli(int i) {
  Matrix m(2, 2);
  using C = std::complex<double>;
  switch (i) {
    case 0: m << C(1, 0), C(0, 0), C(0, 0), C(1, 0); break;
    case 1: m << C(0, 0), C(1, 0), C(1, 0), C(0, 0); break;
    case 2: m << C(0, 0), C(0, -1), C(0, 1), C(0, 0); break;
    default: m << C(1, 0), C(0, 0), C(0, 0), C(-1, 0); break;
  }
  return m;
}

}  // namespace

const Matrix& identity2() { static const Matrix m = makePauli(0); return m; }
const Matrix& pauliX() { static const Matrix m = makePauli(1); return m; }
const Matrix& pauliY() { static const Matrix m = makePauli(2); return m; }
const Matrix& pauliZ() { static const Matrix m = makePauli(3); return m; }

const Matrix& pauli(int i) {
  switch (i) {
    case 1: return pauliX();
    case 2: return pauliY();
    default: return pauliZ();
  }
}

Matrix hermitize(const Matrix& x) {
  if (x.rows() != x.cols() || x.rows() < 1) {
    throw WrongDimension("operator must be square and nonempty");
  }
  if (x.rows() > kMaxDim) {
    throw WrongDimension("dimension exceeds supported maximum of 16");
  }
  const double scale = std::max(1.0, x.norm());
  if ((x - x.adjoint()).norm() > kHermiticityTol * scale) {
    throw NonHermitianInput("operator is not Hermitian within tolerance");
  }
  return 0.5 * (x + x.adjoint().eval());
}

Eigensystem eigendecompose(const Matrix& x) {
  const Matrix h = hermitize(x);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error("eigendecomposition failed to converge");
  }
  const auto n = h.rows();
  Eigensystem es;
  es.values = solver.eigenvalues().reverse();
  es.vectors = Matrix(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    es.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return es;
}

double traceNorm(const Matrix& x) {
  const Eigensystem es = eigendecompose(x);
  return es.values.cwiseAbs().sum();
}

Matrix positivePart(const Matrix& x) {
  const Eigensystem es = eigendecompose(x);
  const double cutoff = kRankTol * std::max(es.values.cwiseAbs().maxCoeff(), 0.0);
  Eigen::VectorXd clipped = es.values;
  for (Eigen::Index k = 0; k < clipped.size(); ++k) {
    if (clipped[k] < cutoff) clipped[k] = 0.0;
  }
  Matrix out = es.vectors * clipped.asDiagonal() * es.vectors.adjoint();
  return 0.5 * (out + out.adjoint().eval());
}

Matrix operatorSqrt(const Matrix& x) {
  const Eigensystem es = eigendecompose(x);
  const double scale = std::max(es.values.cwiseAbs().maxCoeff(), 1.0);
  Eigen::VectorXd vals = es.values;
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    if (vals[k] < -kPsdTol * scale) {
      throw NotPsd("operatorSqrt requires a PSD input");
    }
    vals[k] = std::sqrt(std::max(vals[k], 0.0));
  }
  Matrix out = es.vectors * vals.asDiagonal() * es.vectors.adjoint();
  return 0.5 * (out + out.adjoint().eval());
}

Matrix pseudoInverseSqrt(const Matrix& x) {
  const Eigensystem es = eigendecompose(x);
  const double top = std::max(es.values.cwiseAbs().maxCoeff(), 0.0);
  if (top > 0.0 && es.values.minCoeff() < -kPsdTol * top) {
    throw NotPsd("pseudoInverseSqrt requires a PSD input");
  }
  const double cutoff = kRankTol * top;
  Eigen::VectorXd vals = Eigen::VectorXd::Zero(es.values.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    if (es.values[k] >= cutoff && es.values[k] > 0.0) {
      vals[k] = 1.0 / std::sqrt(es.values[k]);
    }
  }
  Matrix out = es.vectors * vals.asDiagonal() * es.vectors.adjoint();
  return 0.5 * (out + out.adjoint().eval());
}

Matrix supportProjector(const Matrix& x) {
  const Eigensystem es = eigendecompose(x);
  const double cutoff = kRankTol * std::max(es.values.cwiseAbs().maxCoeff(), 0.0);
  Eigen::VectorXd vals = Eigen::VectorXd::Zero(es.values.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    if (std::abs(es.values[k]) >= cutoff && es.values[k] != 0.0) vals[k] = 1.0;
  }
  Matrix out = es.vectors * vals.asDiagonal() * es.vectors.adjoint();
  return 0.5 * (out + out.adjoint().eval());
}

BlochOperator toBloch(const Matrix& x) {
  if (x.rows() != 2 || x.cols() != 2) {
    throw WrongDimension("Bloch form is defined for dim-2 operators only");
  }
  const Matrix h = hermitize(x);
  BlochOperator b;
  b.c = 0.5 * h.trace().real();
  for (int i = 1; i <= 3; ++i) {
    b.r[i - 1] = 0.5 * (h * pauli(i)).trace().real();
  }
  return b;
}

Matrix fromBloch(const BlochOperator& b) {
  Matrix out = b.c * identity2();
  for (int i = 1; i <= 3; ++i) {
    out += b.r[i - 1] * pauli(i);
  }
  return out;
}

}  // namespace qdisc
