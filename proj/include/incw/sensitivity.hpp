#pragma once

#include <Eigen/Dense>

#include "incw/forward.hpp"
#include "incw/observations.hpp"

namespace incw {

/// How r-dependent incidences (StandardIncidence) enter the linearized and adjoint systems.
///
/// Frozen treats r as data inside f_i: the linearization carries only the s and i partials and the
/// P3 equation is source free, so P3 vanishes identically. Full adds the r partial, which gives the
/// exact derivative of the forward map and a P3 equation driven by sum_i theta_i d_R f_i (P2 - P1).
/// The two coincide whenever no incidence depends on r. Full is the default everywhere.
enum class RCoupling { Frozen, Full };

/// Directional derivative of the state with respect to theta along theta_tilde.
struct LinearizedTrajectory {
  Field Sbar;
  Field Ibar;
  Field Rbar;
};

struct AdjointTrajectory {
  Field P1;
  Field P2;
  Field P3;
};

/// Solves the linearized system around `trajectory` forward in time with the same IMEX scheme as
/// solve_forward. The partial derivatives are frozen at the old time level, so for r-free
/// incidences the result is the exact derivative of the discrete forward map.
LinearizedTrajectory solve_linearized(const ForwardProblem& problem, const StateTrajectory& trajectory,
                                      const Eigen::VectorXd& theta_tilde,
                                      RCoupling coupling = RCoupling::Full);

/// Solves the adjoint system backward from the zero terminal state. Diffusion is implicit; the
/// coupling terms and the misfit sources 2(S - S_ob), 2(I - I_ob) are taken at the later level.
/// The misfit sources are weighted node by node with the composite Simpson weights of the cost
/// (normalized to mean 1), which keeps the gradient consistent with the cost for noisy data.
AdjointTrajectory solve_adjoint(const ForwardProblem& problem, const StateTrajectory& trajectory,
                                const Observations& obs, RCoupling coupling = RCoupling::Full);

}  // namespace incw
