#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qdisc/operator_core.hpp"
#include "qdisc/sampling.hpp"

using namespace qdisc;

namespace {
const std::complex<double> I(0.0, 1.0);
}

TEST_CASE("pauli matrices") {
  CHECK((pauliX() * pauliX() - identity2()).norm() == doctest::Approx(0.0));
  CHECK((pauliY() * pauliY() - identity2()).norm() == doctest::Approx(0.0));
  CHECK((pauliZ() * pauliZ() - identity2()).norm() == doctest::Approx(0.0));

  const Eigensystem es = eigendecompose(pauliZ());
  CHECK(es.values(0) == doctest::Approx(1.0));
  CHECK(es.values(1) == doctest::Approx(-1.0));
}

TEST_CASE("pauli product identity on random vectors") {
  Sampler s(11);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Vector3d a, b;
    for (int i = 0; i < 3; ++i) {
      a(i) = s.uniform(-2.0, 2.0);
      b(i) = s.uniform(-2.0, 2.0);
    }
    Matrix lhs = Matrix::Zero(2, 2), sa = Matrix::Zero(2, 2), sb = Matrix::Zero(2, 2);
    for (int i = 1; i <= 3; ++i) {
      sa += a(i - 1) * pauli(i);
      sb += b(i - 1) * pauli(i);
    }
    lhs = sa * sb;
    Matrix rhs = a.dot(b) * identity2();
    const Eigen::Vector3d cr = a.cross(b);
    for (int i = 1; i <= 3; ++i) rhs += I * cr(i - 1) * pauli(i);
    CHECK((lhs - rhs).norm() < 1e-12);
  }
}

TEST_CASE("hermitize accepts and symmetrizes, rejects junk") {
  Sampler s(7);
  const Matrix h = s.hermitian(3);
  CHECK((hermitize(h) - h).norm() < 1e-14);

  Matrix skew = s.ginibre(3);
  CHECK_THROWS_AS((void)hermitize(skew + 3.0 * skew.adjoint().eval()), NonHermitianInput);

  Matrix rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS((void)hermitize(rect), WrongDimension);

  Matrix big = Matrix::Identity(kMaxDim + 1, kMaxDim + 1);
  CHECK_THROWS_AS((void)hermitize(big), WrongDimension);
}

TEST_CASE("eigendecompose returns descending spectrum and orthonormal columns") {
  Sampler s(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix h = s.hermitian(4);
    const Eigensystem es = eigendecompose(h);
    for (int i = 1; i < es.values.size(); ++i) CHECK(es.values(i - 1) >= es.values(i));
    const Matrix rebuilt =
        es.vectors * es.values.cast<std::complex<double>>().asDiagonal() * es.vectors.adjoint();
    CHECK((rebuilt - h).norm() < 1e-10);
  }
}

TEST_CASE("trace norm and positive part") {
  CHECK(traceNorm(pauliZ()) == doctest::Approx(2.0));
  CHECK((positivePart(pauliZ()) - 0.5 * (identity2() + pauliZ())).norm() < 1e-12);

  Sampler s(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix h = s.hermitian(3);
    // |X|_1 = Tr[X_+] + Tr[(-X)_+]
    const double viaParts = positivePart(h).trace().real() + positivePart(-h).trace().real();
    CHECK(traceNorm(h) == doctest::Approx(viaParts).epsilon(1e-10));
  }
}

TEST_CASE("operator sqrt, pseudo-inverse sqrt, support projector") {
  Sampler s(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix p = s.psd(3);
    const Matrix root = operatorSqrt(p);
    CHECK((root * root - p).norm() < 1e-9 * std::max(1.0, p.norm()));

    const Matrix inv = pseudoInverseSqrt(p);
    const Matrix proj = supportProjector(p);
    CHECK((inv * p * inv - proj).norm() < 1e-8 * std::max(1.0, proj.norm()));
    CHECK((proj * proj - proj).norm() < 1e-10);
  }

  // Rank-deficient case: projector itself.
  const Matrix pz = 0.5 * (identity2() + pauliZ());
  CHECK((operatorSqrt(pz) - pz).norm() < 1e-12);
  CHECK((pseudoInverseSqrt(pz) - pz).norm() < 1e-12);
  CHECK((supportProjector(pz) - pz).norm() < 1e-12);

  CHECK_THROWS_AS((void)operatorSqrt(pauliZ()), NotPsd);
}

TEST_CASE("bloch conversions") {
  const Matrix zero = fromBloch(BlochOperator{});
  CHECK(zero.norm() == doctest::Approx(0.0));

  // |0><0| = (1 + sigma_z)/2
  const Matrix ket0 = 0.5 * (identity2() + pauliZ());
  const BlochOperator b = toBloch(ket0);
  CHECK(b.c == doctest::Approx(0.5));
  CHECK(b.r.x() == doctest::Approx(0.0));
  CHECK(b.r.y() == doctest::Approx(0.0));
  CHECK(b.r.z() == doctest::Approx(0.5));

  Sampler s(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const Matrix h = s.hermitian(2);
    CHECK((fromBloch(toBloch(h)) - h).norm() < 1e-12);
  }

  // Eigenvalues are c +- |r|.
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix h = s.hermitian(2);
    const BlochOperator bb = toBloch(h);
    const Eigensystem es = eigendecompose(h);
    CHECK(es.values(0) == doctest::Approx(bb.c + bb.radius()).epsilon(1e-10));
    CHECK(es.values(1) == doctest::Approx(bb.c - bb.radius()).epsilon(1e-10));
  }

  CHECK_THROWS_AS((void)toBloch(Matrix::Identity(3, 3)), WrongDimension);
}
