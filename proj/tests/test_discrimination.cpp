#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qdisc/discrimination.hpp"
#include "qdisc/sampling.hpp"

#include <cmath>

using namespace qdisc;

namespace {

Matrix absOf(const Matrix& x) { return positivePart(x) + positivePart((-x).eval()); }

WeightedEnsemble relabel(const WeightedEnsemble& e, const std::vector<int>& order) {
  WeightedEnsemble out;
  for (int idx : order) out.states.push_back(e.states[static_cast<size_t>(idx)]);
  return out;
}

}  // namespace

TEST_CASE("ensemble validation") {
  CHECK_NOTHROW(requireValidEnsemble(trineEnsemble()));

  WeightedEnsemble bad = trineEnsemble();
  bad.states[0].p = 0.9;
  CHECK_THROWS_AS(requireValidEnsemble(bad), Error);

  WeightedEnsemble notDensity = trineEnsemble();
  notDensity.states[1].rho *= 2.0;
  CHECK_THROWS_AS(requireValidEnsemble(notDensity), Error);
}

TEST_CASE("success probability against the symmetric measurement") {
  // The trine POVM guesses the trine states correctly 2/3 of the time.
  CHECK(successProbability(trineEnsemble(), trinePovm()) == doctest::Approx(2.0 / 3.0));

  // Sequential evaluation through the decomposed tree gives the same number.
  const NestedPovm tree = decompose(trinePovm());
  const WeightedEnsemble padded = padEnsemble(trineEnsemble(), 4);
  CHECK(successProbabilityNested(padded, tree) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("nested and flat success probabilities agree on random inputs") {
  Sampler s(103);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 2;
    const Povm p = s.povm(n, 2);
    const WeightedEnsemble e = s.ensemble(n, 2);
    const double flat = successProbability(e, p);
    const double nested = successProbabilityNested(padEnsemble(e, 4), decompose(p));
    CHECK(flat == doctest::Approx(nested).epsilon(1e-9));
  }
}

TEST_CASE("helstrom") {
  // Orthogonal pure states are perfectly distinguishable.
  WeightedEnsemble pair;
  pair.states = {{0.5, fromBloch({0.5, {0.0, 0.0, 0.5}})}, {0.5, fromBloch({0.5, {0.0, 0.0, -0.5}})}};
  const HelstromResult h = helstrom(pair);
  CHECK(h.probability == doctest::Approx(1.0));
  CHECK(validate(h.povm).pass);

  Sampler s(107);
  for (int trial = 0; trial < 50; ++trial) {
    const WeightedEnsemble e = s.ensemble(2, 2);
    const HelstromResult r = helstrom(e);
    const double expected =
        0.5 * (1.0 + traceNorm(e.states[0].weighted() - e.states[1].weighted()));
    CHECK(r.probability == doctest::Approx(expected).epsilon(1e-12));
    // The returned projective measurement achieves the bound.
    CHECK(successProbability(e, r.povm) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("conditional ensembles and dead branches") {
  const Matrix proj0 = fromBloch({0.5, {0.0, 0.0, 0.5}});
  WeightedEnsemble e;
  e.states = {{0.5, fromBloch({0.5, {0.5, 0.0, 0.0}})}, {0.5, fromBloch({0.5, {0.0, 0.0, -0.5}})}};

  const auto [cond, prob] = conditionalEnsemble(e, proj0, {0, 1});
  // Born rule: outcomes weighted by Tr[B w_j].
  CHECK(prob == doctest::Approx(0.25));
  CHECK(cond.states[0].p == doctest::Approx(1.0));
  CHECK(cond.states[1].p == doctest::Approx(0.0).scale(1.0));
  // |+> collapses onto |0> under the projector.
  CHECK((cond.states[0].rho - proj0).norm() < 1e-12);

  WeightedEnsemble only1;
  only1.states = {{1.0, fromBloch({0.5, {0.0, 0.0, -0.5}})}};
  CHECK_THROWS_AS((void)conditionalEnsemble(only1, proj0, {0}), DeadBranch);
}

TEST_CASE("recursion step equals the two-branch Helstrom average") {
  Sampler s(109);
  const EnsembleSolver solver = [](const WeightedEnsemble& sub) {
    return helstrom(sub).probability;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const WeightedEnsemble e = s.ensemble(4, 2);
    const QubitQ q = s.qubitQ();
    const Matrix qm = fromBloch(q.asBloch());
    Povm first;
    first.elements = {qm, Matrix::Identity(2, 2) - qm};

    const double viaRecursion = recursionValue(e, first, solver);
    const AbcTriple t = buildAbc(e, {0, 1, 2, 3});
    const double viaIntegrand = t.offset + fQ(t.a, t.b, t.c, qm);
    CHECK(viaRecursion == doctest::Approx(viaIntegrand).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("ABC construction for the trine, identity ordering") {
  const WeightedEnsemble e = trineEnsemble();
  const AbcTriple t = buildAbc(e, {0, 1, 2});

  // Direct Bloch arithmetic: w_j = rho_j / 3, slots (0,1,2,pad).
  const Matrix w0 = e.states[0].weighted();
  const Matrix w1 = e.states[1].weighted();
  const Matrix w2 = e.states[2].weighted();
  CHECK((t.a - (0.5 * (w0 + w2) - w1)).norm() < 1e-12);
  CHECK((t.b - 0.5 * (w0 - w2)).norm() < 1e-12);
  CHECK(t.c.norm() < 1e-15);
  CHECK(t.offset == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("ABC for BB84 under the natural pairing has A = 0") {
  // Slots (|0>, |+>, |1>, |->): the two branch pairs each sum to 1/2.
  const AbcTriple t = buildAbc(bb84Ensemble(), {0, 2, 1, 3});
  CHECK(t.a.norm() < 1e-12);
  CHECK(t.offset == doctest::Approx(0.25));
}

TEST_CASE("buildAbc rejects malformed permutations") {
  CHECK_THROWS_AS((void)buildAbc(trineEnsemble(), {0, 1}), SizeMismatch);
  CHECK_THROWS_AS((void)buildAbc(trineEnsemble(), {0, 1, 1}), SizeMismatch);
}

TEST_CASE("closed forms per condition family") {
  const Matrix p0 = fromBloch({0.5, {0.0, 0.0, 0.5}});  // |0><0|
  const Matrix p1 = fromBloch({0.5, {0.0, 0.0, -0.5}});  // |1><1|

  SUBCASE("supports split by A") {
    const Matrix a = p0 - p1;  // sigma_z
    const Matrix b = -0.3 * p0;
    const Matrix c = 0.2 * p1;
    const ClosedForm cf = fClosedForm(a, b, c);
    CHECK(cf.family == 1);
    CHECK(cf.value == doctest::Approx(1.0 + 0.3 + 0.2).epsilon(1e-12));
    CHECK(fQ(a, b, c, cf.q) == doctest::Approx(cf.value).epsilon(1e-12));
  }

  SUBCASE("definite signs") {
    Sampler s(113);
    const Matrix a = s.hermitian(2);
    const Matrix b = s.psd(2);
    const Matrix c = -s.psd(2);
    const ClosedForm cf = fClosedForm(a, b, c);
    CHECK(cf.family <= 2);
    const Matrix d = a + absOf(b) - absOf(c);
    CHECK(cf.value == doctest::Approx(positivePart(d).trace().real() + traceNorm(c)).epsilon(1e-12));
    CHECK(fQ(a, b, c, cf.q) == doctest::Approx(cf.value).epsilon(1e-10).scale(1.0));
  }

  SUBCASE("commuting triple") {
    Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2), c = Matrix::Zero(2, 2);
    a.diagonal() << 0.7, -0.4;
    b.diagonal() << 0.2, -0.5;
    c.diagonal() << -0.1, 0.3;
    const ClosedForm cf = fClosedForm(a, b, c);
    // D = diag(0.7+0.2-0.1, -0.4+0.5-0.3): positive part trace 0.8, |C|_1 = 0.4.
    CHECK(cf.value == doctest::Approx(0.8 + 0.4).epsilon(1e-12));
    CHECK(fQ(a, b, c, cf.q) == doctest::Approx(cf.value).epsilon(1e-12));
  }

  SUBCASE("trine ABC meets no family") {
    const AbcTriple t = buildAbc(trineEnsemble(), {0, 1, 2});
    CHECK_THROWS_AS((void)fClosedForm(t.a, t.b, t.c), ConditionsNotMet);
  }
}

TEST_CASE("closed-form witness dominates random Q") {
  Sampler s(127);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = s.hermitian(2);
    const Matrix b = (s.uniform() < 0.5 ? 1.0 : -1.0) * s.psd(2);
    const Matrix c = (s.uniform() < 0.5 ? 1.0 : -1.0) * s.psd(2);
    const ClosedForm cf = fClosedForm(a, b, c);
    for (int probe = 0; probe < 30; ++probe) {
      const QubitQ q = s.qubitQ();
      CHECK(fQ(a, b, c, fromBloch(q.asBloch())) <= cf.value + 1e-9);
    }
  }
}

TEST_CASE("slot permutations enumerate orderings, identity first") {
  const auto p3 = slotPermutations(3);
  CHECK(p3.size() == 6);
  CHECK(p3.front() == std::vector<int>{0, 1, 2});
  const auto p4 = slotPermutations(4);
  CHECK(p4.size() == 24);
  CHECK(p4.front() == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("optimal probability: known ensembles") {
  const DiscriminationResult trine = optimalProbability(trineEnsemble());
  CHECK(trine.probability == doctest::Approx(2.0 / 3.0).epsilon(1e-6));

  const DiscriminationResult bb84 = optimalProbability(bb84Ensemble());
  CHECK(bb84.probability == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("result is achievable by the returned nested measurement") {
  Sampler s(131);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 3 + trial % 2;
    const WeightedEnsemble e = s.ensemble(n, 2);
    const DiscriminationResult r = optimalProbability(e);
    CHECK(validateNested(r.measurement) < 1e-8);
    const double replay = successProbabilityNested(arrangeForNested(e, r.permutation), r.measurement);
    CHECK(replay == doctest::Approx(r.probability).epsilon(1e-6));
    // Sanity bounds: no worse than the best single guess, never above one.
    double bestPrior = 0.0;
    for (const auto& ws : e.states) bestPrior = std::max(bestPrior, ws.p);
    CHECK(r.probability >= bestPrior - 1e-9);
    CHECK(r.probability <= 1.0 + 1e-9);
  }
}

TEST_CASE("invariance under state relabeling") {
  Sampler s(137);
  for (int trial = 0; trial < 8; ++trial) {
    const WeightedEnsemble e = s.ensemble(3, 2);
    const double base = optimalProbability(e).probability;
    CHECK(optimalProbability(relabel(e, {1, 2, 0})).probability ==
          doctest::Approx(base).epsilon(1e-6));
    CHECK(optimalProbability(relabel(e, {2, 0, 1})).probability ==
          doctest::Approx(base).epsilon(1e-6));
  }
}

TEST_CASE("subadditivity of the optimized objective") {
  Sampler s(139);
  for (int trial = 0; trial < 20; ++trial) {
    BlochOperator a1, a2, b1, b2, c1, c2;
    auto rb = [&] {
      BlochOperator x;
      x.c = s.uniform(-1.0, 1.0);
      x.r = s.uniform(0.0, 1.0) * s.unitVector();
      return x;
    };
    a1 = rb(); a2 = rb(); b1 = rb(); b2 = rb(); c1 = rb(); c2 = rb();
    const BlochOperator a{a1.c + a2.c, a1.r + a2.r};
    const BlochOperator b{b1.c + b2.c, b1.r + b2.r};
    const BlochOperator c{c1.c + c2.c, c1.r + c2.r};

    const OptimizationResult whole = maximizeF(a, b, c);
    // Evaluating each part at the whole's maximizer keeps the comparison a
    // guaranteed lower bound on the parts' optima.
    const double part1 = std::max(maximizeF(a1, b1, c1).value, fQBloch(a1, b1, c1, whole.bestQ));
    const double part2 = std::max(maximizeF(a2, b2, c2).value, fQBloch(a2, b2, c2, whole.bestQ));
    CHECK(whole.value <= part1 + part2 + 1e-6);
  }
}
