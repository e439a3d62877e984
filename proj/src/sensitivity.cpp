#include "incw/sensitivity.hpp"

#include <string>

#include "incw/error.hpp"
#include "neumann_diffusion.hpp"

namespace incw {
namespace {

// theta-weighted partials of the incidence mix at one node.
struct MixPartials {
  double ds = 0.0;
  double di = 0.0;
  double dr = 0.0;
};

MixPartials mix_partials(const ForwardProblem& problem, double s, double i, double r, RCoupling coupling) {
  MixPartials out;
  for (int q = 0; q < problem.m(); ++q) {
    const auto& f = problem.incidences[static_cast<std::size_t>(q)];
    const double w = problem.theta[q];
    out.ds += w * incidence_dS(f, s, i, r);
    out.di += w * incidence_dI(f, s, i, r);
    if (coupling == RCoupling::Full) out.dr += w * incidence_dR(f, s, i, r);
  }
  return out;
}

// Composite Simpson weights divided by the step: 1/3, 4/3, 2/3, ..., 4/3, 1/3. Their mean tends to 1,
// so weighting a source by them is consistent, and it makes the adjoint see the data residual the way
// the Simpson-integrated cost does, which matters for residuals that are rough on the grid scale.
Eigen::VectorXd normalized_simpson_weights(int n) {
  Eigen::VectorXd w(n);
  for (int j = 0; j < n; ++j) w[j] = (j == 0 || j == n - 1) ? 1.0 / 3.0 : (j % 2 == 1 ? 4.0 / 3.0 : 2.0 / 3.0);
  return w;
}

void require_trajectory(const ForwardProblem& problem, const StateTrajectory& trajectory) {
  problem.grid.require_shape(trajectory.S, "trajectory S");
  problem.grid.require_shape(trajectory.I, "trajectory I");
  problem.grid.require_shape(trajectory.R, "trajectory R");
}

}  // namespace

LinearizedTrajectory solve_linearized(const ForwardProblem& problem, const StateTrajectory& trajectory,
                                      const Eigen::VectorXd& theta_tilde, RCoupling coupling) {
  problem.validate();
  require_trajectory(problem, trajectory);
  if (theta_tilde.size() != problem.m()) {
    throw DimensionError("direction has " + std::to_string(theta_tilde.size()) + " entries for " +
                         std::to_string(problem.m()) + " incidence functions");
  }
  const auto& g = problem.grid;
  const auto& p = problem.params;
  const int nx = g.nx();
  const double dt = g.dt();

  LinearizedTrajectory out{g.zeros(), g.zeros(), g.zeros()};
  const detail::NeumannDiffusion diffuse_s(nx, g.dx(), p.d1, dt);
  const detail::NeumannDiffusion diffuse_i(nx, g.dx(), p.d2, dt);
  const detail::NeumannDiffusion diffuse_r(nx, g.dx(), p.d3, dt);

  for (int k = 0; k + 1 < g.nt(); ++k) {
    auto s_new = out.Sbar.col(k + 1);
    auto i_new = out.Ibar.col(k + 1);
    auto r_new = out.Rbar.col(k + 1);
    for (int j = 0; j < nx; ++j) {
      const double s = trajectory.S(j, k);
      const double i = trajectory.I(j, k);
      const double r = trajectory.R(j, k);
      const double sb = out.Sbar(j, k);
      const double ib = out.Ibar(j, k);
      const double rb = out.Rbar(j, k);
      const auto d = mix_partials(problem, s, i, r, coupling);
      const double flux = mixed_incidence(problem.incidences, theta_tilde, s, i, r) + d.ds * sb + d.di * ib + d.dr * rb;
      s_new[j] = sb - dt * flux;
      i_new[j] = ib + dt * (flux - p.gamma * ib);
      r_new[j] = rb + dt * p.gamma * ib;
    }
    diffuse_s.solve(s_new);
    diffuse_i.solve(i_new);
    diffuse_r.solve(r_new);
    if (!s_new.allFinite() || !i_new.allFinite() || !r_new.allFinite()) {
      throw DivergenceError("linearized solver", static_cast<std::size_t>(k + 1));
    }
  }
  return out;
}

AdjointTrajectory solve_adjoint(const ForwardProblem& problem, const StateTrajectory& trajectory,
                                const Observations& obs, RCoupling coupling) {
  problem.validate();
  require_trajectory(problem, trajectory);
  const auto& g = problem.grid;
  g.require_shape(obs.S_ob, "observed S");
  g.require_shape(obs.I_ob, "observed I");
  const auto& p = problem.params;
  const int nx = g.nx();
  const int nt = g.nt();
  const double dt = g.dt();

  const auto wx = normalized_simpson_weights(nx);
  const auto wt = normalized_simpson_weights(nt);

  AdjointTrajectory out{g.zeros(), g.zeros(), g.zeros()};
  const detail::NeumannDiffusion diffuse_1(nx, g.dx(), p.d1, dt);
  const detail::NeumannDiffusion diffuse_2(nx, g.dx(), p.d2, dt);
  const detail::NeumannDiffusion diffuse_3(nx, g.dx(), p.d3, dt);

  // Column nt-1 stays zero (terminal condition). Step from level k+1 down to k.
  for (int k = nt - 2; k >= 0; --k) {
    auto p1_new = out.P1.col(k);
    auto p2_new = out.P2.col(k);
    auto p3_new = out.P3.col(k);
    for (int j = 0; j < nx; ++j) {
      const double s = trajectory.S(j, k + 1);
      const double i = trajectory.I(j, k + 1);
      const double r = trajectory.R(j, k + 1);
      const double p1 = out.P1(j, k + 1);
      const double p2 = out.P2(j, k + 1);
      const double p3 = out.P3(j, k + 1);
      const auto d = mix_partials(problem, s, i, r, coupling);
      const double jump = p2 - p1;
      const double w = 2.0 * wx[j] * wt[k + 1];
      p1_new[j] = p1 + dt * (d.ds * jump + w * (s - obs.S_ob(j, k + 1)));
      p2_new[j] = p2 + dt * (d.di * jump + p.gamma * (p3 - p2) + w * (i - obs.I_ob(j, k + 1)));
      p3_new[j] = p3 + dt * (d.dr * jump);
    }
    diffuse_1.solve(p1_new);
    diffuse_2.solve(p2_new);
    diffuse_3.solve(p3_new);
    if (!p1_new.allFinite() || !p2_new.allFinite() || !p3_new.allFinite()) {
      throw DivergenceError("adjoint solver", static_cast<std::size_t>(k));
    }
  }
  return out;
}

}  // namespace incw
