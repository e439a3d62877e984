#include "incw/forward.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "incw/error.hpp"
#include "neumann_diffusion.hpp"

namespace incw {

void ForwardProblem::validate() const {
  params.validate();
  if (incidences.empty()) throw InvalidInput("at least one incidence function is required");
  if (theta.size() != m()) {
    throw DimensionError("theta has " + std::to_string(theta.size()) + " entries for " + std::to_string(m()) +
                         " incidence functions");
  }
  for (double v : theta) {
    if (!std::isfinite(v)) throw InvalidInput("theta must be finite");
  }
}

ForwardProblem ForwardProblem::with_theta(Eigen::VectorXd new_theta) const {
  ForwardProblem p = *this;
  p.theta = std::move(new_theta);
  return p;
}

double mixed_incidence(const std::vector<IncidenceSpec>& incidences, const Eigen::VectorXd& theta, double s,
                       double i, double r) {
  double sum = 0.0;
  for (std::size_t q = 0; q < incidences.size(); ++q) {
    sum += theta[static_cast<Eigen::Index>(q)] * incidence_value(incidences[q], s, i, r);
  }
  return sum;
}

StateTrajectory solve_forward(const ForwardProblem& problem) {
  problem.validate();
  const auto& g = problem.grid;
  const auto& p = problem.params;
  const int nx = g.nx();
  const int nt = g.nt();
  const double dt = g.dt();

  const auto init = project_initial_fields(p, g);
  StateTrajectory out{g.zeros(), g.zeros(), g.zeros()};
  out.S.col(0) = init.s;
  out.I.col(0) = init.i;
  out.R.col(0) = init.r;

  const detail::NeumannDiffusion diffuse_s(nx, g.dx(), p.d1, dt);
  const detail::NeumannDiffusion diffuse_i(nx, g.dx(), p.d2, dt);
  const detail::NeumannDiffusion diffuse_r(nx, g.dx(), p.d3, dt);

  for (int k = 0; k + 1 < nt; ++k) {
    auto s_new = out.S.col(k + 1);
    auto i_new = out.I.col(k + 1);
    auto r_new = out.R.col(k + 1);
    for (int j = 0; j < nx; ++j) {
      const double s = out.S(j, k);
      const double i = out.I(j, k);
      const double r = out.R(j, k);
      const double flux = mixed_incidence(problem.incidences, problem.theta, s, i, r);
      const double recovery = p.gamma * i;
      s_new[j] = s - dt * flux;
      i_new[j] = i + dt * (flux - recovery);
      r_new[j] = r + dt * recovery;
    }
    diffuse_s.solve(s_new);
    diffuse_i.solve(i_new);
    diffuse_r.solve(r_new);
    if (!s_new.allFinite() || !i_new.allFinite() || !r_new.allFinite()) {
      throw DivergenceError("forward solver", static_cast<std::size_t>(k + 1));
    }
  }
  return out;
}

Field total_field(const StateTrajectory& trajectory) { return trajectory.S + trajectory.I + trajectory.R; }

double min_entry(const StateTrajectory& trajectory) {
  return std::min({trajectory.S.minCoeff(), trajectory.I.minCoeff(), trajectory.R.minCoeff()});
}

}  // namespace incw
