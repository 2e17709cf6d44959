#include "qdisc/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qdisc {

void requireValidEnsemble(const WeightedEnsemble& e, double tol) {
  if (e.states.empty()) throw SizeMismatch("empty ensemble");
  const int d = e.dim();
  double total = 0.0;
  for (const WeightedState& ws : e.states) {
    if (ws.p < -tol) throw Error("negative prior probability");
    if (ws.rho.rows() != d || ws.rho.cols() != d) {
      throw SizeMismatch("ensemble states have mismatched dimensions");
    }
    const Eigensystem es = eigendecompose(ws.rho);
    if (es.values.minCoeff() < -tol) throw NotPsd("ensemble state not PSD");
    if (std::abs(es.values.sum() - 1.0) > tol) throw Error("ensemble state trace differs from 1");
    total += ws.p;
  }
  if (std::abs(total - 1.0) > tol * static_cast<double>(e.size())) {
    throw Error("prior probabilities do not sum to 1");
  }
}

double successProbability(const WeightedEnsemble& e, const Povm& m) {
  if (e.size() != m.size() || e.dim() != m.dim()) {
    throw SizeMismatch("ensemble and POVM sizes must match");
  }
  double value = 0.0;
  for (int j = 0; j < e.size(); ++j) {
    value += (m.elements[static_cast<size_t>(j)] * e.states[static_cast<size_t>(j)].weighted())
                 .trace()
                 .real();
  }
  return value;
}

double successProbabilityNested(const WeightedEnsemble& e, const NestedPovm& n) {
  if (e.size() != (1 << n.depth) || e.dim() != n.dim) {
    throw SizeMismatch("ensemble must have 2^depth states of the tree dimension");
  }
  double value = 0.0;
  for (int j = 0; j < e.size(); ++j) {
    const std::string path = leafPath(j, n.depth);
    Matrix state = e.states[static_cast<size_t>(j)].weighted();
    double prob = 0.0;
    for (int u = 1; u <= n.depth; ++u) {
      const std::string prefix = path.substr(0, static_cast<size_t>(u - 1));
      std::tie(state, prob) = applyBinary(state, n.node(prefix, path[static_cast<size_t>(u - 1)] - '0'));
    }
    value += prob;
  }
  return value;
}

WeightedEnsemble padEnsemble(const WeightedEnsemble& e, int count) {
  WeightedEnsemble out = e;
  const int d = e.dim();
  while (out.size() < count) {
    out.states.push_back({0.0, Matrix::Identity(d, d) / static_cast<double>(d)});
  }
  return out;
}

HelstromResult helstrom(const WeightedEnsemble& e) {
  if (e.size() != 2) throw SizeMismatch("helstrom needs exactly 2 states");
  const Matrix gamma = e.states[0].weighted() - e.states[1].weighted();
  const Eigensystem es = eigendecompose(gamma);
  const int d = e.dim();

  Matrix plus = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    if (es.values[k] > 0.0) {
      plus += es.vectors.col(k) * es.vectors.col(k).adjoint();
    }
  }
  plus = 0.5 * (plus + plus.adjoint().eval());

  HelstromResult out;
  out.probability = 0.5 * (1.0 + es.values.cwiseAbs().sum());
  out.povm.elements = {plus, Matrix::Identity(d, d) - plus};
  return out;
}

std::pair<WeightedEnsemble, double> conditionalEnsemble(const WeightedEnsemble& e, const Matrix& b,
                                                        const std::vector<int>& selected) {
  double branchProb = 0.0;
  std::vector<std::pair<Matrix, double>> posts;
  for (int idx : selected) {
    if (idx < 0 || idx >= e.size()) throw SizeMismatch("selected index out of range");
    auto [post, prob] = applyBinary(e.states[static_cast<size_t>(idx)].weighted(), b);
    posts.emplace_back(std::move(post), prob);
    branchProb += prob;
  }
  if (branchProb <= kBranchTol) {
    throw DeadBranch("branch probability below tolerance");
  }
  WeightedEnsemble out;
  const int d = e.dim();
  for (auto& [post, prob] : posts) {
    WeightedState ws;
    ws.p = prob / branchProb;
    ws.rho = prob > kBranchTol ? (post / prob).eval()
                               : (Matrix::Identity(d, d) / static_cast<double>(d)).eval();
    out.states.push_back(std::move(ws));
  }
  return {out, branchProb};
}

double recursionValue(const WeightedEnsemble& e, const Povm& firstStep,
                      const EnsembleSolver& solver) {
  if (e.size() != 4) throw SizeMismatch("recursionValue expects 4 states");
  if (firstStep.size() != 2) throw SizeMismatch("first step must be binary");
  static const std::vector<int> branches[2] = {{0, 2}, {1, 3}};
  double value = 0.0;
  for (int k = 0; k < 2; ++k) {
    double branchProb = 0.0;
    for (int idx : branches[k]) {
      branchProb += (firstStep.elements[static_cast<size_t>(k)] *
                     e.states[static_cast<size_t>(idx)].weighted())
                        .trace()
                        .real();
    }
    if (branchProb <= kBranchTol) continue;  // the 0 * (undefined) limit of the recursion is 0
    auto [conditional, prob] =
        conditionalEnsemble(e, firstStep.elements[static_cast<size_t>(k)], branches[k]);
    value += prob * solver(conditional);
  }
  return value;
}

AbcTriple buildAbc(const WeightedEnsemble& e, const std::vector<int>& perm) {
  const int n = e.size();
  if ((n != 3 && n != 4) || static_cast<int>(perm.size()) != n) {
    throw SizeMismatch("buildAbc expects 3 or 4 states and a matching permutation");
  }
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int idx : perm) {
    if (idx < 0 || idx >= n || seen[static_cast<size_t>(idx)]) {
      throw SizeMismatch("invalid permutation");
    }
    seen[static_cast<size_t>(idx)] = true;
  }
  auto w = [&](int slot) { return e.states[static_cast<size_t>(perm[static_cast<size_t>(slot)])].weighted(); };
  auto p = [&](int slot) { return e.states[static_cast<size_t>(perm[static_cast<size_t>(slot)])].p; };

  AbcTriple t;
  const int d = e.dim();
  if (n == 3) {
    t.a = 0.5 * (w(0) + w(2)) - w(1);
    t.b = 0.5 * (w(0) - w(2));
    t.c = Matrix::Zero(d, d);
    t.offset = p(1);
  } else {
    t.a = 0.5 * (w(0) + w(2) - w(1) - w(3));
    t.b = 0.5 * (w(0) - w(2));
    t.c = 0.5 * (w(1) - w(3));
    t.offset = 0.5 * (p(1) + p(3));
  }
  return t;
}

double fQ(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& q) {
  const Matrix qh = hermitize(q);
  const Eigensystem es = eigendecompose(qh);
  if (es.values.minCoeff() < -kPsdTol) throw NotPsd("Q must be PSD");
  if (es.values.maxCoeff() > 1.0 + kPsdTol) throw NotSubIdentity("Q must be <= identity");
  const int d = static_cast<int>(qh.rows());
  const Matrix sq = operatorSqrt(qh);
  const Matrix sq1 = operatorSqrt((Matrix::Identity(d, d) - qh).eval());
  return (qh * hermitize(a)).trace().real() + traceNorm(hermitize(sq * b * sq)) +
         traceNorm(hermitize(sq1 * c * sq1));
}

namespace {

Matrix absOperator(const Matrix& x) {
  const Eigensystem es = eigendecompose(x);
  Matrix out = es.vectors * es.values.cwiseAbs().asDiagonal() * es.vectors.adjoint();
  return 0.5 * (out + out.adjoint().eval());
}

Matrix strictPositiveProjector(const Matrix& x) {
  const Eigensystem es = eigendecompose(x);
  const double cutoff = kRankTol * std::max(es.values.cwiseAbs().maxCoeff(), 0.0);
  const int d = static_cast<int>(x.rows());
  Matrix out = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    if (es.values[k] > cutoff && es.values[k] > 0.0) {
      out += es.vectors.col(k) * es.vectors.col(k).adjoint();
    }
  }
  return 0.5 * (out + out.adjoint().eval());
}

Matrix strictNegativeProjector(const Matrix& x) { return strictPositiveProjector((-x).eval()); }

bool definiteSign(const Matrix& x) {
  const Eigensystem es = eigendecompose(x);
  const double scale = std::max(es.values.cwiseAbs().maxCoeff(), 0.0);
  if (scale == 0.0) return true;
  return es.values.minCoeff() >= -kSignTol * scale || es.values.maxCoeff() <= kSignTol * scale;
}

bool commutes(const Matrix& x, const Matrix& y) {
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0) return true;
  return (x * y - y * x).norm() < 1e-9 * nx * ny;
}

bool supportedInside(const Matrix& x, const Matrix& projector) {
  const double nx = x.norm();
  if (nx == 0.0) return true;
  return (x - projector * x * projector).norm() <= kSupportTol * std::max(1.0, nx);
}

}  // namespace

std::optional<ClosedForm> tryClosedForm(const Matrix& a, const Matrix& b, const Matrix& c) {
  const Matrix ah = hermitize(a);
  const Matrix bh = hermitize(b);
  const Matrix ch = hermitize(c);

  int family = 0;
  const Matrix aPlus = strictPositiveProjector(ah);
  if (supportedInside(bh, aPlus) && supportedInside(ch, strictNegativeProjector(ah))) {
    family = 1;
  } else if (definiteSign(bh) && definiteSign(ch)) {
    family = 2;
  } else if (commutes(ah, bh) && commutes(ah, ch) && commutes(bh, ch)) {
    family = 3;
  } else {
    return std::nullopt;
  }

  const Matrix d = ah + absOperator(bh) - absOperator(ch);
  ClosedForm out;
  out.family = family;
  out.value = positivePart(d).trace().real() + traceNorm(ch);
  out.q = family == 1 ? aPlus : strictPositiveProjector(d);
  return out;
}

ClosedForm fClosedForm(const Matrix& a, const Matrix& b, const Matrix& c) {
  auto cf = tryClosedForm(a, b, c);
  if (!cf) throw ConditionsNotMet("no analytic condition family holds");
  return *cf;
}

std::vector<std::vector<int>> slotPermutations(int n) {
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

WeightedEnsemble arrangeForNested(const WeightedEnsemble& e, const std::vector<int>& perm) {
  WeightedEnsemble out;
  for (int idx : perm) {
    out.states.push_back(e.states[static_cast<size_t>(idx)]);
  }
  return padEnsemble(out, 4);
}

namespace {

// Depth-2 tree: {Q, 1-Q} followed by the conditional Helstrom projectors.
NestedPovm buildMeasurement(const WeightedEnsemble& slots, const Matrix& q) {
  const int d = static_cast<int>(q.rows());
  const Matrix identity = Matrix::Identity(d, d);
  NestedPovm out;
  out.depth = 2;
  out.dim = d;
  const Matrix first[2] = {hermitize(q), hermitize(identity - q)};
  out.nodes[""] = {first[0], first[1]};
  for (int k = 0; k < 2; ++k) {
    const Matrix root = operatorSqrt(first[k]);
    const Matrix gamma = hermitize(
        root * (slots.states[static_cast<size_t>(k)].weighted() -
                slots.states[static_cast<size_t>(k + 2)].weighted()) *
        root);
    // Work in the support basis of the parent outcome so the two children
    // are PSD and sum exactly to its support projector (same eigenbasis and
    // cutoff as supportProjector).
    const Eigensystem es = eigendecompose(first[k]);
    const double cutoff = kRankTol * std::max(es.values.cwiseAbs().maxCoeff(), 0.0);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
      if (std::abs(es.values[i]) >= cutoff && es.values[i] != 0.0) keep.push_back(i);
    }
    if (keep.empty()) {
      out.nodes[std::string(1, static_cast<char>('0' + k))] = {Matrix::Zero(d, d),
                                                               Matrix::Zero(d, d)};
      continue;
    }
    Matrix v(d, static_cast<Eigen::Index>(keep.size()));
    for (size_t i = 0; i < keep.size(); ++i) v.col(static_cast<Eigen::Index>(i)) = es.vectors.col(keep[i]);
    const Matrix gSmall = hermitize(v.adjoint() * gamma * v);
    Matrix plusSmall = Matrix::Zero(gSmall.rows(), gSmall.cols());
    if (gSmall.rows() > 0) {
      const Eigensystem gs = eigendecompose(gSmall);
      const double gcut = kRankTol * std::max(gs.values.cwiseAbs().maxCoeff(), 0.0);
      for (Eigen::Index i = 0; i < gs.values.size(); ++i) {
        if (gs.values[i] > gcut && gs.values[i] > 0.0) {
          plusSmall += gs.vectors.col(i) * gs.vectors.col(i).adjoint();
        }
      }
    }
    const Matrix plus = hermitize(v * plusSmall * v.adjoint());
    const Matrix minus =
        hermitize(v * (Matrix::Identity(plusSmall.rows(), plusSmall.cols()) - plusSmall) *
                  v.adjoint());
    out.nodes[std::string(1, static_cast<char>('0' + k))] = {plus, minus};
  }
  return out;
}

}  // namespace

DiscriminationResult optimalProbability(const WeightedEnsemble& e,
                                        const DiscriminationOptions& options) {
  requireValidEnsemble(e);
  const int n = e.size();
  if (n != 3 && n != 4) throw SizeMismatch("optimalProbability expects 3 or 4 states");

  std::vector<std::vector<int>> perms;
  if (options.allPermutations) {
    perms = slotPermutations(n);
  } else {
    std::vector<int> identity(static_cast<size_t>(n));
    std::iota(identity.begin(), identity.end(), 0);
    perms = {identity};
  }

  for (const auto& perm : perms) {
    const AbcTriple t = buildAbc(e, perm);
    if (auto cf = tryClosedForm(t.a, t.b, t.c)) {
      DiscriminationResult out;
      out.probability = t.offset + cf->value;
      static const char* kFamilyNames[] = {"", "i", "ii", "iii"};
      out.method = std::string("closed-form(") + kFamilyNames[cf->family] + ")";
      out.permutation = perm;
      out.q = cf->q;
      out.measurement = buildMeasurement(arrangeForNested(e, perm), cf->q);
      return out;
    }
  }

  if (e.dim() != 2) {
    throw UnsupportedDimension("numerical optimization over Q is implemented for qubits only");
  }
  std::vector<int> identity(static_cast<size_t>(n));
  std::iota(identity.begin(), identity.end(), 0);
  const AbcTriple t = buildAbc(e, identity);
  const OptimizationResult opt =
      maximizeF(toBloch(t.a), toBloch(t.b), toBloch(t.c), options.optimizer);
  const Matrix q = fromBloch(opt.bestQ.asBloch());

  DiscriminationResult out;
  out.probability = t.offset + fQ(t.a, t.b, t.c, q);
  out.method = "numerical";
  out.permutation = identity;
  out.q = q;
  out.measurement = buildMeasurement(arrangeForNested(e, identity), q);
  return out;
}

}  // namespace qdisc
