#pragma once

#include <filesystem>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "incw/forward.hpp"
#include "incw/incidence.hpp"

namespace fixture {

inline std::vector<incw::IncidenceSpec> twin_catalog() {
  return {incw::IncidenceSpec(incw::Bilinear{0.4}), incw::IncidenceSpec(incw::Saturated{0.4, 1.0}),
          incw::IncidenceSpec(incw::StandardIncidence{0.4})};
}

inline Eigen::VectorXd theta_true() { return Eigen::Vector3d(0.2, 0.3, 0.5); }

// Coarse version of the twin setup with a bump in the initial data so that diffusion matters.
inline incw::ForwardProblem small_problem(Eigen::VectorXd theta = theta_true(), int nx = 21, int nt = 201) {
  incw::ModelParams p;
  p.s0 = incw::InitialProfile::function([](double x) { return 0.85 - 0.1 * std::cos(3.14159265358979 * x / 2.0); });
  p.i0 = incw::InitialProfile::function([](double x) { return 0.15 + 0.1 * std::cos(3.14159265358979 * x / 2.0); });
  return {incw::SpaceTimeGrid(2.0, 10.0, nx, nt), p, twin_catalog(), std::move(theta)};
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("incw_unit_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline Eigen::VectorXd random_simplex(std::mt19937_64& rng, int m) {
  std::exponential_distribution<double> e(1.0);
  Eigen::VectorXd v(m);
  for (int q = 0; q < m; ++q) v[q] = e(rng);
  return v / v.sum();
}

}  // namespace fixture
