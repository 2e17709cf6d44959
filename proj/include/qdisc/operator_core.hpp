#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace qdisc {

using Matrix = Eigen::MatrixXcd;

// Shared numerical tolerances. Support membership and PSD clamping are
// relative to the largest absolute eigenvalue of the operator at hand.
inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kRankTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kCompletenessTol = 1e-9;
inline constexpr double kRoundtripTol = 1e-9;
inline constexpr double kBranchTol = 1e-12;
inline constexpr double kSignTol = 1e-9;
inline constexpr double kSupportTol = 1e-9;
inline constexpr int kMaxDim = 16;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonHermitianInput : Error { using Error::Error; };
struct NotPsd : Error { using Error::Error; };
struct NotSubIdentity : Error { using Error::Error; };
struct WrongDimension : Error { using Error::Error; };
struct SizeMismatch : Error { using Error::Error; };
struct InvalidPovm : Error { using Error::Error; };
struct InvalidNestedPovm : Error { using Error::Error; };
struct DeadBranch : Error { using Error::Error; };
struct ConditionsNotMet : Error { using Error::Error; };
struct ConstraintViolation : Error { using Error::Error; };
struct NotDefiniteSign : Error { using Error::Error; };
struct UnsupportedDimension : Error { using Error::Error; };
struct NotEquiprobable : Error { using Error::Error; };
struct NotPure : Error { using Error::Error; };
struct UnsupportedN : Error { using Error::Error; };

/// Qubit Hermitian operator in the form X = c * I + r . sigma.
struct BlochOperator {
  double c = 0.0;
  Eigen::Vector3d r = Eigen::Vector3d::Zero();

  double radius() const { return r.norm(); }
  bool isZero(double tol = 0.0) const { return std::abs(c) <= tol && r.norm() <= tol; }
};

/// Eigenvalues sorted descending, eigenvectors as matching columns.
struct Eigensystem {
  Eigen::VectorXd values;
  Matrix vectors;
};

const Matrix& identity2();
const Matrix& pauliX();
const Matrix& pauliY();
const Matrix& pauliZ();
const Matrix& pauli(int i);  // i in {1,2,3}

/// Checks Hermiticity within kHermiticityTol (relative Frobenius) and
/// returns the symmetrized (X + X^dag)/2. Throws NonHermitianInput.
Matrix hermitize(const Matrix& x);

Eigensystem eigendecompose(const Matrix& x);

double traceNorm(const Matrix& x);

Matrix positivePart(const Matrix& x);

/// Square root of a PSD operator. Eigenvalues in [-kPsdTol, 0) are
/// clamped to zero; anything more negative throws NotPsd.
Matrix operatorSqrt(const Matrix& x);

/// X^(-1/2) on the support of X, zero on the kernel.
Matrix pseudoInverseSqrt(const Matrix& x);

/// Projector onto the span of eigenvectors with |lambda| >= kRankTol * max|lambda|.
Matrix supportProjector(const Matrix& x);

BlochOperator toBloch(const Matrix& x);
Matrix fromBloch(const BlochOperator& b);

}  // namespace qdisc
