#pragma once

#include "qdisc/operator_core.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qdisc {

/// N-outcome POVM: PSD elements summing to the identity.
struct Povm {
  std::vector<Matrix> elements;

  int size() const { return static_cast<int>(elements.size()); }
  int dim() const { return elements.empty() ? 0 : static_cast<int>(elements.front().rows()); }
};

struct PovmReport {
  double maxPsdViolation = 0.0;
  double completenessResidual = 0.0;
  bool pass = false;
  std::string message;
};

/// Binary tree of conditional binary POVMs. Nodes are keyed by the bit
/// string of previous outcomes (root key is ""), first outcome bit first.
/// The leaf with path k1..kF corresponds to flat index j = sum 2^(u-1) k_u.
struct NestedPovm {
  int depth = 0;
  int dim = 0;
  std::map<std::string, std::pair<Matrix, Matrix>> nodes;

  const Matrix& node(const std::string& path, int bit) const;
};

int leafIndex(const std::string& path);
std::string leafPath(int j, int depth);

PovmReport validate(const Povm& p);

/// Constructive decomposition into the binary tree. Pads with zero elements up to the
/// next power of two; depth is ceil(log2 N).
NestedPovm decompose(const Povm& p);

/// Flattens the tree back into |sqrt(B_uF) ... sqrt(B_1)|^2 elements.
Povm recompose(const NestedPovm& n);

/// Validates PSD-ness and weak completeness at every node. Throws
/// InvalidNestedPovm on failure; returns the worst residual otherwise.
double validateNested(const NestedPovm& n);

/// Back-action of one binary outcome: (sqrt(B) state sqrt(B), probability).
std::pair<Matrix, double> applyBinary(const Matrix& state, const Matrix& b);

}  // namespace qdisc
