#pragma once

#include <vector>

#include <Eigen/Dense>

#include "incw/grid.hpp"
#include "incw/incidence.hpp"
#include "incw/model.hpp"

namespace incw {

/// One instance of the forward problem: grid, coefficients, and the weighted incidence mix.
/// `theta` may lie off the simplex; finite-difference checks evaluate the cost around it.
struct ForwardProblem {
  SpaceTimeGrid grid;
  ModelParams params;
  std::vector<IncidenceSpec> incidences;
  Eigen::VectorXd theta;

  int m() const noexcept { return static_cast<int>(incidences.size()); }
  void validate() const;
  ForwardProblem with_theta(Eigen::VectorXd new_theta) const;
};

struct StateTrajectory {
  Field S;
  Field I;
  Field R;
};

/// Marches the reaction-diffusion SIR system from the sampled initial data to T.
///
/// Each step is IMEX: diffusion is backward Euler with homogeneous Neumann boundaries (mirror
/// ghost nodes, second order), and the incidence and recovery terms are explicit at the old level.
/// Throws DivergenceError at the first time index holding a non-finite value. Negative undershoot
/// is left in place; see min_entry().
StateTrajectory solve_forward(const ForwardProblem& problem);

/// Pointwise S + I + R.
Field total_field(const StateTrajectory& trajectory);

/// Smallest entry over all three fields.
double min_entry(const StateTrajectory& trajectory);

/// Sum over the incidence mix, sum_i theta_i f_i(s, i, r), at one point.
double mixed_incidence(const std::vector<IncidenceSpec>& incidences, const Eigen::VectorXd& theta, double s,
                       double i, double r);

}  // namespace incw
