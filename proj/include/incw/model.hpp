#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "incw/grid.hpp"

namespace incw {

/// Initial density: a constant, a list of nodal values, or a function of x.
class InitialProfile {
 public:
  InitialProfile(double value = 0.0) : v_(value) {}  // NOLINT: implicit from constant is intended
  static InitialProfile nodal(std::vector<double> values) { return InitialProfile(std::move(values)); }
  static InitialProfile function(std::function<double(double)> fn) { return InitialProfile(std::move(fn)); }

  bool is_constant() const noexcept { return std::holds_alternative<double>(v_); }
  double constant() const { return std::get<double>(v_); }

  /// Throws DimensionError for a nodal list of the wrong length.
  Eigen::VectorXd sample(const SpaceTimeGrid& grid) const;

 private:
  explicit InitialProfile(std::vector<double> values) : v_(std::move(values)) {}
  explicit InitialProfile(std::function<double(double)> fn) : v_(std::move(fn)) {}

  std::variant<double, std::vector<double>, std::function<double(double)>> v_;
};

/// Coefficients of the reaction-diffusion system. Defaults match the shipped twin experiment.
struct ModelParams {
  double d1 = 0.5;
  double d2 = 0.5;
  double d3 = 0.5;
  double gamma = 0.4;
  double sigma = 1e-4;
  InitialProfile s0 = 0.85;
  InitialProfile i0 = 0.15;
  InitialProfile r0 = 0.0;

  /// Rates must be >= 0 and sigma > 0.
  void validate() const;
};

struct InitialFields {
  Eigen::VectorXd s;
  Eigen::VectorXd i;
  Eigen::VectorXd r;
};

/// Samples s0, i0, r0 onto the grid nodes. Negative or non-finite values throw InvalidInput.
InitialFields project_initial_fields(const ModelParams& params, const SpaceTimeGrid& grid);

/// A point of the probability simplex {theta >= 0, sum theta = 1}.
class SimplexWeights {
 public:
  static constexpr double kSumTolerance = 1e-12;

  /// Throws InvalidInput when `theta` is empty, has a negative entry, or does not sum to 1.
  explicit SimplexWeights(Eigen::VectorXd theta);

  static SimplexWeights uniform(int m);
  static bool admissible(const Eigen::VectorXd& theta) noexcept;

  const Eigen::VectorXd& values() const noexcept { return theta_; }
  int size() const noexcept { return static_cast<int>(theta_.size()); }
  double operator[](int i) const { return theta_[i]; }

 private:
  Eigen::VectorXd theta_;
};

}  // namespace incw
