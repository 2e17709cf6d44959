#pragma once

#include "qdisc/optimizer.hpp"
#include "qdisc/povm.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qdisc {

struct WeightedState {
  double p = 0.0;
  Matrix rho;

  Matrix weighted() const { return p * rho; }
};

/// Ensemble of density matrices with prior probabilities summing to one.
struct WeightedEnsemble {
  std::vector<WeightedState> states;

  int size() const { return static_cast<int>(states.size()); }
  int dim() const { return states.empty() ? 0 : static_cast<int>(states.front().rho.rows()); }
};

/// Throws on invalid priors or non-density states.
void requireValidEnsemble(const WeightedEnsemble& e, double tol = 1e-10);

double successProbability(const WeightedEnsemble& e, const Povm& m);

/// Sequential evaluation through the tree; the ensemble must have exactly
/// 2^depth entries ordered by leaf index.
double successProbabilityNested(const WeightedEnsemble& e, const NestedPovm& n);

/// Pads with zero-weight maximally mixed states up to `count` entries.
WeightedEnsemble padEnsemble(const WeightedEnsemble& e, int count);

struct HelstromResult {
  double probability = 0.0;
  Povm povm;  // {projector onto positive support of rho0-rho1, complement}
};

HelstromResult helstrom(const WeightedEnsemble& e);

/// Post-measurement ensemble of the selected states after outcome B,
/// together with the branch probability. Throws DeadBranch when the branch
/// probability falls below kBranchTol.
std::pair<WeightedEnsemble, double> conditionalEnsemble(const WeightedEnsemble& e,
                                                        const Matrix& b,
                                                        const std::vector<int>& selected);

using EnsembleSolver = std::function<double(const WeightedEnsemble&)>;

/// One step of the size-halving recursion for N = 4: branch probabilities
/// times the solver value on each conditional ensemble. Branch k gathers
/// the states whose first outcome bit is k (indices {0,2} and {1,3}).
double recursionValue(const WeightedEnsemble& e, const Povm& firstStep,
                      const EnsembleSolver& solver);

struct AbcTriple {
  Matrix a, b, c;
  double offset = 0.0;
};

/// A, B, C and additive offset for N = 3 or 4. `perm[slot]` is the index of
/// the original state placed at leaf slot j (j = k1 + 2 k2); for N = 3 the
/// fourth slot is the zero padding and perm has 3 entries.
AbcTriple buildAbc(const WeightedEnsemble& e, const std::vector<int>& perm);

/// Tr[QA] + |sqrtQ B sqrtQ|_1 + |sqrt(1-Q) C sqrt(1-Q)|_1.
double fQ(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& q);

struct ClosedForm {
  double value = 0.0;
  Matrix q;
  int family = 0;  // 1: supports split by A, 2: definite signs, 3: commuting
};

/// Closed-form maximum Tr[(A+|B|-|C|)_+] + |C|_1 with its witness, when one
/// of the three condition families holds.
std::optional<ClosedForm> tryClosedForm(const Matrix& a, const Matrix& b, const Matrix& c);

/// Same as tryClosedForm but throws ConditionsNotMet on failure.
ClosedForm fClosedForm(const Matrix& a, const Matrix& b, const Matrix& c);

struct DiscriminationOptions {
  bool allPermutations = true;
  OptimizerConfig optimizer;
};

struct DiscriminationResult {
  double probability = 0.0;
  std::string method;          // "closed-form(i)", "closed-form(ii)", "closed-form(iii)", "numerical", "helstrom"
  std::vector<int> permutation;  // slot -> original state index
  Matrix q;
  NestedPovm measurement;      // leaf j detects state permutation[j]
};

/// Ensemble reordered into leaf-slot order (and zero-padded for N = 3) so
/// the returned measurement can be replayed with successProbabilityNested.
WeightedEnsemble arrangeForNested(const WeightedEnsemble& e, const std::vector<int>& perm);

/// Optimal discrimination of 3 or 4 states: closed forms over all label
/// permutations first, numerical optimization over Q (qubits only) as the
/// fallback.
DiscriminationResult optimalProbability(const WeightedEnsemble& e,
                                        const DiscriminationOptions& options = {});

/// All slot orderings probed by optimalProbability, identity first.
std::vector<std::vector<int>> slotPermutations(int n);

}  // namespace qdisc
