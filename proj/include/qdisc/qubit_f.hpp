#pragma once

#include "qdisc/operator_core.hpp"

namespace qdisc {

/// Measurement operator 0 <= Q <= 1 on a qubit, in Bloch coefficients.
/// Feasibility: 0 <= c <= 1 and |r| <= min(c, 1-c).
struct QubitQ {
  double c = 0.0;
  Eigen::Vector3d r = Eigen::Vector3d::Zero();

  BlochOperator asBloch() const { return BlochOperator{c, r}; }
};

void requireValidQ(const QubitQ& q, double tol = 1e-9);

enum class SignClass { Positive, Negative, Indefinite };

/// Definite sign iff the spectrum {c - r, c + r} does not straddle zero,
/// within tol relative to the operator scale. The zero operator counts as
/// positive.
SignClass classifySign(const BlochOperator& x, double tol = kSignTol);

/// Bloch coefficients (c, r) of sqrt(Q); the vector part of sqrt(Q) is
/// parallel to r_Q with the returned norm.
std::pair<double, double> sqrtCoefficients(const QubitQ& q);

/// Closed-form qubit evaluation of Tr[QA] + |sqrtQ B sqrtQ|_1 +
/// |sqrt(1-Q) C sqrt(1-Q)|_1. Each trace-norm term picks its branch from
/// the sign class of its argument.
double fQBloch(const BlochOperator& a, const BlochOperator& b, const BlochOperator& c,
               const QubitQ& q, SignClass signB, SignClass signC);
double fQBloch(const BlochOperator& a, const BlochOperator& b, const BlochOperator& c,
               const QubitQ& q);

struct DefiniteSignOptimum {
  double value = 0.0;
  QubitQ q;
};

/// Analytic maximum of F_Q when B and C both have definite sign. The
/// maximizer is the support projector of (A + |B| - |C|)_+; ties at zero
/// resolve to Q = 0.
DefiniteSignOptimum definiteSignOptimum(const BlochOperator& a, const BlochOperator& b,
                                        const BlochOperator& c);

/// Two-parameter search space for the C = 0 case: lambda_max(Q) = 1, with
/// r_Q in the span of r_A and r_B at angle phi from r_A.
struct N3ParamSpace {
  Eigen::Vector3d e1 = Eigen::Vector3d::UnitX();
  Eigen::Vector3d e2 = Eigen::Vector3d::UnitY();
  double cMin = 0.5;
  double cMax = 1.0;

  QubitQ point(double c, double phi) const;
};

N3ParamSpace n3ReducedParametrization(const BlochOperator& a, const BlochOperator& b);

}  // namespace qdisc
