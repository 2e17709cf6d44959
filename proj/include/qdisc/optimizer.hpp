#pragma once

#include "qdisc/qubit_f.hpp"

#include <cstdint>
#include <vector>

namespace qdisc {

struct OptimizerConfig {
  std::uint64_t seed = 20240817;
  int restarts = 16;
  int maxEvals = 2000;       // per restart
  double matchTol = 1e-4;    // agreement expected vs closed forms, when they apply
  bool useReducedN3 = true;  // 2-parameter space when C = 0
  bool trackHistory = false;
};

struct OptimizationResult {
  QubitQ bestQ;
  double value = 0.0;
  int startsUsed = 0;
  bool converged = false;
  std::vector<std::pair<int, double>> history;  // (cumulative evaluation, best value)
};

/// Clamps c to [0,1] and rescales r to the feasible radius; idempotent.
QubitQ feasibilityProject(double c, const Eigen::Vector3d& r);

/// Multi-start Nelder-Mead maximization of F_Q over feasible qubit Q.
OptimizationResult maximizeF(const BlochOperator& a, const BlochOperator& b,
                             const BlochOperator& c, const OptimizerConfig& config = {});

}  // namespace qdisc
