#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "incw/config.hpp"
#include "incw/forward.hpp"
#include "incw/observations.hpp"
#include "incw/optimizer.hpp"

namespace incw {

// Library side of the `incw` subcommands. Each writes its artifacts under `out_dir`, creating it
// if needed, and returns the in-memory result. Output is a pure function of the inputs.

/// Forward solve at `theta` (theta_true when unset). Writes trajectory.csv.
StateTrajectory cmd_simulate(const ExperimentConfig& cfg, const std::optional<Eigen::VectorXd>& theta,
                             const std::filesystem::path& out_dir);

/// Twin-experiment observations at theta_true. Writes observations.csv.
Observations cmd_make_obs(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

using IterationObserver = std::function<void(const IterationRecord&)>;

/// Runs the weight identification against the observation file. Writes
///   iterations.csv            convergence history
///   theta_star.csv            identified weights
///   recovered.csv             forward solve at theta*, `x,t,S,I,R`
///   incidence_surface.csv     f*(S,I) = sum theta*_i f_i(S,I,R) on [0,1]^2, R = max(0, 1-S-I)
///   plot.gp                   gnuplot script for the above
IdentifyResult cmd_identify(const ExperimentConfig& cfg, const std::filesystem::path& obs_path,
                            const std::filesystem::path& out_dir, const IterationObserver& observer = {});

struct GradientComponentCheck {
  int component = 0;
  double adjoint = 0.0;
  double finite_difference = 0.0;
  double rel_error = 0.0;
};

struct LinearizationCheck {
  double epsilon = 0.0;
  double rel_error = 0.0;
};

struct GradcheckReport {
  Eigen::VectorXd theta;
  Eigen::VectorXd direction;
  std::vector<GradientComponentCheck> components;
  std::vector<LinearizationCheck> linearization;
};

/// Central differences of J (off-simplex extension), h per component; the 2m solves run concurrently.
Eigen::VectorXd finite_difference_gradient(const ForwardProblem& problem, const Observations& obs, double h);

/// L2(Q_T) relative gap between (F(theta + eps d) - F(theta))/eps and the linearized (Sbar, Ibar).
double linearization_error(const ForwardProblem& problem, const Eigen::VectorXd& direction, double eps,
                           RCoupling coupling);

/// Adjoint gradient against central differences (h = 1e-5) at `theta` (theta0, else uniform), and
/// the linearization gap along e1 - e2 (e1 when m = 1) at eps = 1e-4 and 5e-5. Writes gradcheck.csv.
GradcheckReport cmd_gradcheck(const ExperimentConfig& cfg, const std::filesystem::path& obs_path,
                              const std::optional<Eigen::VectorXd>& theta, const std::filesystem::path& out_dir);

}  // namespace incw
