#include "incw/objective.hpp"

#include <string>

#include "incw/error.hpp"

namespace incw {
namespace {

// Composite Simpson weights 1,4,2,4,...,2,4,1 scaled by h/3.
Eigen::VectorXd simpson_weights(int n, double h) {
  if (n < 3 || n % 2 == 0) {
    throw InvalidInput("composite Simpson needs an odd node count >= 3, got " + std::to_string(n));
  }
  Eigen::VectorXd w(n);
  for (int j = 0; j < n; ++j) w[j] = (j == 0 || j == n - 1) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
  return w * (h / 3.0);
}

}  // namespace

double simpson2d(const Field& field, const SpaceTimeGrid& grid) {
  grid.require_shape(field, "integrand");
  const auto wx = simpson_weights(static_cast<int>(field.rows()), grid.dx());
  const auto wt = simpson_weights(static_cast<int>(field.cols()), grid.dt());
  return wx.dot(field * wt);
}

double inner_product(const Field& a, const Field& b, const SpaceTimeGrid& grid) {
  grid.require_shape(a, "left factor");
  grid.require_shape(b, "right factor");
  return simpson2d(a.cwiseProduct(b), grid);
}

CostReport cost(const ForwardProblem& problem, const StateTrajectory& trajectory, const Observations& obs) {
  const auto& g = problem.grid;
  g.require_shape(trajectory.S, "trajectory S");
  g.require_shape(trajectory.I, "trajectory I");
  g.require_shape(obs.S_ob, "observed S");
  g.require_shape(obs.I_ob, "observed I");

  CostReport out;
  out.misfit_s = simpson2d((trajectory.S - obs.S_ob).array().square().matrix(), g);
  out.misfit_i = simpson2d((trajectory.I - obs.I_ob).array().square().matrix(), g);
  out.reg = 0.5 * problem.params.sigma * problem.theta.squaredNorm();
  out.j_total = out.misfit_s + out.misfit_i + out.reg;
  return out;
}

Eigen::VectorXd gradient(const ForwardProblem& problem, const StateTrajectory& trajectory,
                         const AdjointTrajectory& adjoint, const Eigen::VectorXd& theta) {
  const auto& g = problem.grid;
  g.require_shape(trajectory.S, "trajectory S");
  g.require_shape(adjoint.P1, "adjoint P1");
  g.require_shape(adjoint.P2, "adjoint P2");
  if (theta.size() != problem.m()) throw DimensionError("theta size does not match the incidence list");

  const Field jump = adjoint.P2 - adjoint.P1;
  Eigen::VectorXd out(problem.m());
  Field integrand(g.nx(), g.nt());
  for (int q = 0; q < problem.m(); ++q) {
    const auto& f = problem.incidences[static_cast<std::size_t>(q)];
    for (int k = 0; k < g.nt(); ++k) {
      for (int j = 0; j < g.nx(); ++j) {
        integrand(j, k) = incidence_value(f, trajectory.S(j, k), trajectory.I(j, k), trajectory.R(j, k)) * jump(j, k);
      }
    }
    out[q] = simpson2d(integrand, g) + problem.params.sigma * theta[q];
  }
  return out;
}

PdeObjective::PdeObjective(ForwardProblem problem, Observations obs, RCoupling coupling)
    : problem_(std::move(problem)), obs_(std::move(obs)), coupling_(coupling) {
  problem_.grid.require_shape(obs_.S_ob, "observed S");
  problem_.grid.require_shape(obs_.I_ob, "observed I");
}

CostReport PdeObjective::value(const Eigen::VectorXd& theta) const {
  const auto p = problem_.with_theta(theta);
  return cost(p, solve_forward(p), obs_);
}

Evaluation PdeObjective::value_and_gradient(const Eigen::VectorXd& theta) const {
  const auto p = problem_.with_theta(theta);
  const auto state = solve_forward(p);
  const auto adjoint = solve_adjoint(p, state, obs_, coupling_);
  return {cost(p, state, obs_), gradient(p, state, adjoint, theta)};
}

}  // namespace incw
