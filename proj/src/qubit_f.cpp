#include "qdisc/qubit_f.hpp"

#include <algorithm>
#include <cmath>

namespace qdisc {

void requireValidQ(const QubitQ& q, double tol) {
  if (q.c < -tol || q.c > 1.0 + tol) {
    throw ConstraintViolation("c_Q outside [0,1]");
  }
  if (q.r.norm() > std::min(q.c, 1.0 - q.c) + tol) {
    throw ConstraintViolation("r_Q exceeds min(c_Q, 1-c_Q)");
  }
}

SignClass classifySign(const BlochOperator& x, double tol) {
  const double r = x.radius();
  const double scale = std::max(std::abs(x.c) + r, 1e-300);
  if (r <= std::abs(x.c) + tol * scale) {
    return x.c >= 0.0 ? SignClass::Positive : SignClass::Negative;
  }
  return SignClass::Indefinite;
}

std::pair<double, double> sqrtCoefficients(const QubitQ& q) {
  requireValidQ(q);
  const double r = q.r.norm();
  const double hi = std::sqrt(std::max(q.c + r, 0.0));
  const double lo = std::sqrt(std::max(q.c - r, 0.0));
  return {0.5 * (hi + lo), 0.5 * (hi - lo)};
}

namespace {

// |c + r| + |c - r| with r^2 clamped at zero against roundoff.
double absEigenvalueSum(double c, double r2) {
  const double r = std::sqrt(std::max(r2, 0.0));
  return std::abs(c + r) + std::abs(c - r);
}

// Trace norm of sqrtQ X sqrtQ via Bloch coefficients. cQ/rQ describe Q
// itself (pass 1-c_Q and -r_Q for the complementary branch).
double branchTraceNorm(double cQ, const Eigen::Vector3d& rQ, const BlochOperator& x,
                       SignClass sign) {
  const double cQX = cQ * x.c + rQ.dot(x.r);
  if (sign != SignClass::Indefinite) {
    // |sqrtQ X sqrtQ|_1 = +/- 2 c_{QX} for X >= 0 / X <= 0.
    return sign == SignClass::Positive ? 2.0 * cQX : -2.0 * cQX;
  }
  const double r2 = cQX * cQX +
                    (x.r.squaredNorm() - x.c * x.c) * (cQ * cQ - rQ.squaredNorm());
  return 2.0 * std::sqrt(std::max(r2, 0.0));
}

}  // namespace

double fQBloch(const BlochOperator& a, const BlochOperator& b, const BlochOperator& c,
               const QubitQ& q, SignClass signB, SignClass signC) {
  requireValidQ(q);
  const double qc = std::clamp(q.c, 0.0, 1.0);
  double value = 2.0 * (qc * a.c + q.r.dot(a.r));
  value += branchTraceNorm(qc, q.r, b, signB);
  value += branchTraceNorm(1.0 - qc, -q.r, c, signC);
  return value;
}

double fQBloch(const BlochOperator& a, const BlochOperator& b, const BlochOperator& c,
               const QubitQ& q) {
  return fQBloch(a, b, c, q, classifySign(b), classifySign(c));
}

DefiniteSignOptimum definiteSignOptimum(const BlochOperator& a, const BlochOperator& b,
                                        const BlochOperator& c) {
  const SignClass sb = classifySign(b);
  const SignClass sc = classifySign(c);
  if (sb == SignClass::Indefinite || sc == SignClass::Indefinite) {
    throw NotDefiniteSign("B and C must both have definite sign");
  }
  const double bs = sb == SignClass::Positive ? 1.0 : -1.0;
  const double cs = sc == SignClass::Positive ? 1.0 : -1.0;

  // D = A + |B| - |C|
  BlochOperator d;
  d.c = a.c + bs * b.c - cs * c.c;
  d.r = a.r + bs * b.r - cs * c.r;
  const double rd = d.radius();

  DefiniteSignOptimum out;
  out.value = std::max(d.c + rd, 0.0) + std::max(d.c - rd, 0.0) + 2.0 * (cs * c.c);
  if (d.c + rd <= 0.0) {
    out.q = QubitQ{0.0, Eigen::Vector3d::Zero()};  // D <= 0, tie at zero resolves to Q = 0
  } else if (d.c - rd > 0.0) {
    out.q = QubitQ{1.0, Eigen::Vector3d::Zero()};
  } else {
    out.q = QubitQ{0.5, d.r / (2.0 * rd)};  // projector onto the positive eigenvector of D
  }
  return out;
}

QubitQ N3ParamSpace::point(double c, double phi) const {
  const double cc = std::clamp(c, cMin, cMax);
  const double radius = 1.0 - cc;
  return QubitQ{cc, radius * (std::cos(phi) * e1 + std::sin(phi) * e2)};
}

N3ParamSpace n3ReducedParametrization(const BlochOperator& a, const BlochOperator& b) {
  N3ParamSpace space;
  Eigen::Vector3d e1 = a.r;
  if (e1.norm() < 1e-14) e1 = b.r;
  if (e1.norm() < 1e-14) e1 = Eigen::Vector3d::UnitX();
  e1.normalize();
  Eigen::Vector3d e2 = b.r - b.r.dot(e1) * e1;
  if (e2.norm() < 1e-12) {
    // r_A and r_B collinear: any orthogonal direction completes the plane
    e2 = e1.unitOrthogonal();
  }
  e2.normalize();
  space.e1 = e1;
  space.e2 = e2;
  return space;
}

}  // namespace qdisc
