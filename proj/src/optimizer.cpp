#include "incw/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "incw/error.hpp"

namespace incw {

void OptimizerConfig::validate(int m) const {
  if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be > 0");
  if (max_iters < 1) throw InvalidInput("max_iters must be >= 1");
  if (!(t0 > 0.0)) throw InvalidInput("t0 must be > 0");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw InvalidInput("armijo_c must lie in (0, 1)");
  if (!(backtrack_ratio > 0.0 && backtrack_ratio < 1.0)) throw InvalidInput("backtrack_ratio must lie in (0, 1)");
  if (max_backtracks < 0) throw InvalidInput("max_backtracks must be >= 0");
  if (theta0 && theta0->size() != m) {
    throw DimensionError("theta0 has " + std::to_string(theta0->size()) + " entries, problem has " + std::to_string(m));
  }
}

SimplexWeights project_simplex(const Eigen::VectorXd& v) {
  const auto n = v.size();
  if (n == 0) throw InvalidInput("cannot project an empty vector");
  if (!v.allFinite()) throw InvalidInput("cannot project a non-finite vector");
  if ((v.array() >= 0.0).all() && v.sum() == 1.0) return SimplexWeights(v);

  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  // Largest rho with sorted[rho] - (cumsum_rho - 1)/(rho + 1) > 0 fixes the active count k and the
  // excess c = cumsum - 1, so tau = c / k.
  double cumsum = 0.0;
  double excess = 0.0;
  double active = 1.0;
  for (Eigen::Index rho = 0; rho < n; ++rho) {
    cumsum += sorted[static_cast<std::size_t>(rho)];
    const double k = static_cast<double>(rho + 1);
    if (sorted[static_cast<std::size_t>(rho)] - (cumsum - 1.0) / k > 0.0) {
      excess = cumsum - 1.0;
      active = k;
    }
  }
  // (k v - c) / k rather than v - c / k: equal entries then land exactly on 1/k.
  Eigen::VectorXd out = ((active * v.array() - excess) / active).max(0.0).matrix();

  // Push any rounding residue of the sum onto the largest entry. The sum runs in sorted order so
  // that the result does not depend on the input ordering.
  std::vector<double> kept(out.data(), out.data() + n);
  std::sort(kept.begin(), kept.end(), std::greater<>());
  const double residue = 1.0 - std::accumulate(kept.begin(), kept.end(), 0.0);
  if (residue != 0.0) {
    Eigen::Index largest = 0;
    out.maxCoeff(&largest);
    out[largest] += residue;
  }
  return SimplexWeights(std::move(out));
}

IdentifyResult identify(const Objective& objective, const OptimizerConfig& config,
                        const std::function<void(const IterationRecord&)>& observer) {
  const int m = objective.dimension();
  config.validate(m);

  Eigen::VectorXd theta = config.theta0 ? config.theta0->values() : SimplexWeights::uniform(m).values();
  std::vector<IterationRecord> history;
  int k = 0;

  auto with_iteration = [&](auto&& fn) {
    try {
      return fn();
    } catch (const DivergenceError& e) {
      throw e.at_iteration(static_cast<std::size_t>(k));
    }
  };

  Evaluation current = with_iteration([&] { return objective.value_and_gradient(theta); });
  for (;;) {
    const Eigen::VectorXd& g = current.gradient;
    const double g2 = g.squaredNorm();
    const double j_now = current.cost.j_total;

    double step = config.t0;
    int backtracks = 0;
    bool accepted = false;
    Eigen::VectorXd trial;
    CostReport trial_cost;
    for (int b = 0; b <= config.max_backtracks; ++b) {
      step = config.t0 * std::pow(config.backtrack_ratio, b);
      backtracks = b;
      trial = project_simplex(theta - step * g).values();
      trial_cost = with_iteration([&] { return objective.value(trial); });
      if (trial_cost.j_total <= j_now - config.armijo_c * step * g2) {
        accepted = true;
        break;
      }
    }

    history.push_back({k, theta, current.cost, std::sqrt(g2), step, backtracks, !accepted});
    if (observer) observer(history.back());
    const double change = std::abs(trial_cost.j_total - j_now);
    theta = trial;
    ++k;
    current = with_iteration([&] { return objective.value_and_gradient(theta); });

    const bool converged = change < config.epsilon;
    if (converged || k >= config.max_iters) {
      history.push_back({k, theta, current.cost, current.gradient.norm(), 0.0, 0, false});
      if (observer) observer(history.back());
      return {SimplexWeights(theta), std::move(history), converged ? StopReason::Converged : StopReason::IterationCap};
    }
  }
}

}  // namespace incw
