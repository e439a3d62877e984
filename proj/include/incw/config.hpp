#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "incw/forward.hpp"
#include "incw/grid.hpp"
#include "incw/incidence.hpp"
#include "incw/model.hpp"
#include "incw/optimizer.hpp"
#include "incw/sensitivity.hpp"

namespace incw {

struct NoiseSettings {
  double level = 0.02;
  std::uint64_t seed = 42;
};

/// Everything one experiment needs. Unset keys keep the defaults below, which are the shipped twin
/// experiment on (0,2) x (0,10).
struct ExperimentConfig {
  SpaceTimeGrid grid{2.0, 10.0, 101, 1001};
  ModelParams params;
  std::vector<IncidenceSpec> incidences;
  Eigen::VectorXd theta_true;
  NoiseSettings noise;
  OptimizerConfig optimizer;
  RCoupling coupling = RCoupling::Full;
  std::filesystem::path output_dir = "out";

  ForwardProblem problem() const { return problem(theta_true); }
  ForwardProblem problem(Eigen::VectorXd theta) const;
};

/// INI text with sections [grid] [params] [incidences] [truth] [noise] [optimizer] [output].
/// Comments start with ';'. Unknown sections or keys throw InvalidInput; syntax errors throw
/// ParseError with the line number.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Comma-separated reals, e.g. "0.2,0.3,0.5".
Eigen::VectorXd parse_vector(std::string_view text);

}  // namespace incw
