#include "incw/model.hpp"

#include <cmath>
#include <string>

#include "incw/error.hpp"

namespace incw {

Eigen::VectorXd InitialProfile::sample(const SpaceTimeGrid& grid) const {
  const int nx = grid.nx();
  Eigen::VectorXd out(nx);
  if (const auto* c = std::get_if<double>(&v_)) {
    out.setConstant(*c);
  } else if (const auto* values = std::get_if<std::vector<double>>(&v_)) {
    if (static_cast<int>(values->size()) != nx) {
      throw DimensionError("initial profile has " + std::to_string(values->size()) + " nodal values, grid has " +
                           std::to_string(nx) + " nodes");
    }
    out = Eigen::Map<const Eigen::VectorXd>(values->data(), nx);
  } else {
    const auto& fn = std::get<std::function<double(double)>>(v_);
    for (int j = 0; j < nx; ++j) out[j] = fn(grid.x(j));
  }
  return out;
}

void ModelParams::validate() const {
  auto nonneg = [](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidInput(std::string(name) + " must be >= 0");
  };
  nonneg(d1, "d1");
  nonneg(d2, "d2");
  nonneg(d3, "d3");
  nonneg(gamma, "gamma");
  if (!std::isfinite(sigma) || sigma <= 0.0) throw InvalidInput("sigma must be > 0");
}

InitialFields project_initial_fields(const ModelParams& params, const SpaceTimeGrid& grid) {
  InitialFields f{params.s0.sample(grid), params.i0.sample(grid), params.r0.sample(grid)};
  auto check = [](const Eigen::VectorXd& v, const char* name) {
    for (double x : v) {
      if (!std::isfinite(x) || x < 0.0) throw InvalidInput(std::string(name) + " must be finite and >= 0 at every node");
    }
  };
  check(f.s, "s0");
  check(f.i, "i0");
  check(f.r, "r0");
  return f;
}

SimplexWeights::SimplexWeights(Eigen::VectorXd theta) : theta_(std::move(theta)) {
  if (theta_.size() == 0) throw InvalidInput("simplex weights must be non-empty");
  if (!admissible(theta_)) throw InvalidInput("weights are not on the probability simplex");
}

SimplexWeights SimplexWeights::uniform(int m) {
  if (m < 1) throw InvalidInput("simplex dimension must be >= 1");
  return SimplexWeights(Eigen::VectorXd::Constant(m, 1.0 / m));
}

bool SimplexWeights::admissible(const Eigen::VectorXd& theta) noexcept {
  if (theta.size() == 0) return false;
  for (double v : theta) {
    if (!std::isfinite(v) || v < 0.0) return false;
  }
  return std::abs(theta.sum() - 1.0) <= kSumTolerance;
}

}  // namespace incw
