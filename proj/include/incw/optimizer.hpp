#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "incw/model.hpp"
#include "incw/objective.hpp"

namespace incw {

struct OptimizerConfig {
  std::optional<SimplexWeights> theta0;  // uniform when unset
  double epsilon = 1e-4;                 // stop when |J(theta^{k+1}) - J(theta^k)| < epsilon
  int max_iters = 500;
  double t0 = 10.0;
  double armijo_c = 1e-4;
  double backtrack_ratio = 0.5;
  int max_backtracks = 40;

  /// Throws InvalidInput on out-of-range fields or a theta0 of the wrong size.
  void validate(int m) const;
};

struct IterationRecord {
  int k = 0;
  Eigen::VectorXd theta;
  CostReport j;
  double grad_norm = 0.0;
  double step = 0.0;    // step t_k that produced theta^{k+1}; 0 on the final record
  int backtracks = 0;   // step reductions before acceptance
  bool fallback = false;  // no trial satisfied the Armijo test; the smallest trial was taken
};

enum class StopReason { Converged, IterationCap };

struct IdentifyResult {
  SimplexWeights theta;
  std::vector<IterationRecord> history;
  StopReason stop;
};

/// Euclidean projection onto the probability simplex (sort and threshold).
SimplexWeights project_simplex(const Eigen::VectorXd& v);

/// Projected Landweber iteration
///   theta^{k+1} = P(theta^k - t_k grad J(theta^k))
/// with t_k the first of t0, t0 r, t0 r^2, ... whose projected point satisfies
///   J(theta^+) <= J(theta^k) - c t |grad J|^2.
/// The history holds one record per iterate, including the final one. `observer`, when set, sees
/// each record as it is appended.
IdentifyResult identify(const Objective& objective, const OptimizerConfig& config,
                        const std::function<void(const IterationRecord&)>& observer = {});

}  // namespace incw
