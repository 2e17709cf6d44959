#include "qdisc/povm.hpp"

#include <cmath>

namespace qdisc {

const Matrix& NestedPovm::node(const std::string& path, int bit) const {
  auto it = nodes.find(path);
  if (it == nodes.end()) {
    throw InvalidNestedPovm("missing node for path '" + path + "'");
  }
  return bit == 0 ? it->second.first : it->second.second;
}

int leafIndex(const std::string& path) {
  int j = 0;
  for (size_t u = 0; u < path.size(); ++u) {
    if (path[u] == '1') j += 1 << u;
  }
  return j;
}

std::string leafPath(int j, int depth) {
  std::string path(static_cast<size_t>(depth), '0');
  for (int u = 0; u < depth; ++u) {
    if ((j >> u) & 1) path[static_cast<size_t>(u)] = '1';
  }
  return path;
}

PovmReport validate(const Povm& p) {
  PovmReport report;
  if (p.size() < 2) {
    report.pass = false;
    report.message = "a POVM needs at least 2 elements";
    return report;
  }
  const int d = p.dim();
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& e : p.elements) {
    if (e.rows() != d || e.cols() != d) {
      report.pass = false;
      report.message = "elements have mismatched dimensions";
      return report;
    }
    const Eigensystem es = eigendecompose(e);
    report.maxPsdViolation = std::max(report.maxPsdViolation, std::max(0.0, -es.values.minCoeff()));
    sum += e;
  }
  report.completenessResidual = (sum - Matrix::Identity(d, d)).norm();
  report.pass = report.maxPsdViolation <= kPsdTol &&
                report.completenessResidual <= kCompletenessTol * std::sqrt(static_cast<double>(d));
  report.message = report.pass ? "ok" : "positivity or completeness violated";
  return report;
}

namespace {

// Sum of padded elements whose first |prefix| outcome bits match the prefix.
Matrix prefixSum(const std::vector<Matrix>& padded, const std::string& prefix, int depth) {
  const int d = static_cast<int>(padded.front().rows());
  Matrix sum = Matrix::Zero(d, d);
  for (int j = 0; j < static_cast<int>(padded.size()); ++j) {
    const std::string path = leafPath(j, depth);
    if (path.compare(0, prefix.size(), prefix) == 0) sum += padded[static_cast<size_t>(j)];
  }
  return sum;
}

void buildNodes(const std::vector<Matrix>& padded, int depth, const std::string& prefix,
                const Matrix& renorm, NestedPovm& out) {
  const int u = static_cast<int>(prefix.size()) + 1;
  Matrix b[2];
  for (int k = 0; k < 2; ++k) {
    const Matrix s = prefixSum(padded, prefix + static_cast<char>('0' + k), depth);
    b[k] = hermitize(renorm * s * renorm.adjoint());
  }
  out.nodes[prefix] = {b[0], b[1]};
  if (u == depth) return;
  for (int k = 0; k < 2; ++k) {
    const Matrix childRenorm = pseudoInverseSqrt(b[k]) * renorm;
    buildNodes(padded, depth, prefix + static_cast<char>('0' + k), childRenorm, out);
  }
}

}  // namespace

NestedPovm decompose(const Povm& p) {
  const PovmReport report = validate(p);
  if (!report.pass) {
    throw InvalidPovm("decompose: " + report.message);
  }
  const int n = p.size();
  const int d = p.dim();
  int depth = 0;
  while ((1 << depth) < n) ++depth;
  const int padded_n = 1 << depth;

  std::vector<Matrix> padded = p.elements;
  padded.resize(static_cast<size_t>(padded_n), Matrix::Zero(d, d));

  NestedPovm out;
  out.depth = depth;
  out.dim = d;
  buildNodes(padded, depth, "", Matrix::Identity(d, d), out);
  return out;
}

Povm recompose(const NestedPovm& n) {
  if (n.depth < 1 || n.dim < 1) {
    throw InvalidNestedPovm("recompose: empty tree");
  }
  // sqrt of each node operator, computed once
  std::map<std::string, std::pair<Matrix, Matrix>> sqrts;
  for (const auto& [path, ops] : n.nodes) {
    sqrts[path] = {operatorSqrt(ops.first), operatorSqrt(ops.second)};
  }
  Povm out;
  const int leaves = 1 << n.depth;
  out.elements.reserve(static_cast<size_t>(leaves));
  for (int j = 0; j < leaves; ++j) {
    const std::string path = leafPath(j, n.depth);
    Matrix m = Matrix::Identity(n.dim, n.dim);
    for (int u = 1; u <= n.depth; ++u) {
      const std::string prefix = path.substr(0, static_cast<size_t>(u - 1));
      auto it = sqrts.find(prefix);
      if (it == sqrts.end()) {
        throw InvalidNestedPovm("recompose: missing node for path '" + prefix + "'");
      }
      const Matrix& s = path[static_cast<size_t>(u - 1)] == '0' ? it->second.first : it->second.second;
      m = s * m;
    }
    out.elements.push_back(hermitize(m.adjoint() * m));
  }
  return out;
}

double validateNested(const NestedPovm& n) {
  if (n.depth < 1 || n.dim < 1) {
    throw InvalidNestedPovm("empty tree");
  }
  double worst = 0.0;
  for (const auto& [path, ops] : n.nodes) {
    for (const Matrix* b : {&ops.first, &ops.second}) {
      const Eigensystem es = eigendecompose(*b);
      if (-es.values.minCoeff() > kPsdTol) {
        throw InvalidNestedPovm("node operator not PSD at path '" + path + "'");
      }
    }
    Matrix target;
    if (path.empty()) {
      target = Matrix::Identity(n.dim, n.dim);
    } else {
      const std::string parentPath = path.substr(0, path.size() - 1);
      const Matrix& parent = n.node(parentPath, path.back() - '0');
      target = supportProjector(parent);
    }
    worst = std::max(worst, (ops.first + ops.second - target).norm());
  }
  if (worst > kCompletenessTol * std::sqrt(static_cast<double>(n.dim))) {
    throw InvalidNestedPovm("weak completeness violated");
  }
  return worst;
}

std::pair<Matrix, double> applyBinary(const Matrix& state, const Matrix& b) {
  const Eigensystem es = eigendecompose(b);
  if (es.values.size() > 0) {
    if (es.values.minCoeff() < -kPsdTol) throw NotPsd("binary element not PSD");
    if (es.values.maxCoeff() > 1.0 + kPsdTol) throw NotSubIdentity("binary element exceeds identity");
  }
  const Eigensystem st = eigendecompose(state);
  if (st.values.size() > 0 && st.values.minCoeff() < -kPsdTol * std::max(1.0, st.values.cwiseAbs().maxCoeff())) {
    throw NotPsd("state not PSD");
  }
  const Matrix root = operatorSqrt(b);
  Matrix post = root * state * root;
  post = 0.5 * (post + post.adjoint().eval());
  return {post, post.trace().real()};
}

}  // namespace qdisc
