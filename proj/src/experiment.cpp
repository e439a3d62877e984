#include "incw/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>

#include "incw/csv.hpp"
#include "incw/error.hpp"
#include "incw/objective.hpp"
#include "incw/sensitivity.hpp"

namespace incw {
namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open '" + path.string() + "' for writing");
  return out;
}

void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InvalidInput("cannot create output directory '" + dir.string() + "': " + ec.message());
}

double l2_pair_norm(const Field& a, const Field& b, const SpaceTimeGrid& g) {
  return std::sqrt(simpson2d(a.array().square().matrix(), g) + simpson2d(b.array().square().matrix(), g));
}

void write_surface(const std::filesystem::path& path, const std::vector<IncidenceSpec>& incidences,
                   const Eigen::VectorXd& theta) {
  constexpr int kNodes = 51;
  auto out = open_output(path);
  out << "# f_star(S,I) = sum_i theta_i f_i(S,I,R) with R = max(0, 1 - S - I); axes are an interpretation\n";
  out << "S,I,f_star\n";
  for (int a = 0; a < kNodes; ++a) {
    const double s = static_cast<double>(a) / (kNodes - 1);
    for (int b = 0; b < kNodes; ++b) {
      const double i = static_cast<double>(b) / (kNodes - 1);
      const double r = std::max(0.0, 1.0 - s - i);
      out << format_real(s) << ',' << format_real(i) << ',' << format_real(mixed_incidence(incidences, theta, s, i, r))
          << '\n';
    }
  }
}

void write_plot_script(const std::filesystem::path& path) {
  auto out = open_output(path);
  out << R"(# gnuplot script for the identify artifacts; run `gnuplot plot.gp` in this directory
set datafile separator ','
set terminal pngcairo size 900,600
set output 'cost.png'
set xlabel 'iteration'
set ylabel 'J'
set logscale y
plot 'iterations.csv' using 1:'j_total' skip 1 with linespoints title 'J(theta^k)'
unset logscale y
set output 'recovered_S.png'
set xlabel 'x'
set ylabel 't'
splot 'recovered.csv' using 1:2:3 skip 1 with points pointtype 0 title 'S'
set output 'recovered_I.png'
splot 'recovered.csv' using 1:2:4 skip 1 with points pointtype 0 title 'I'
set output 'incidence_surface.png'
set xlabel 'S'
set ylabel 'I'
splot 'incidence_surface.csv' using 1:2:3 skip 2 with points pointtype 0 title 'f*'
)";
}

}  // namespace

StateTrajectory cmd_simulate(const ExperimentConfig& cfg, const std::optional<Eigen::VectorXd>& theta,
                             const std::filesystem::path& out_dir) {
  const auto problem = cfg.problem(theta ? *theta : cfg.theta_true);
  auto traj = solve_forward(problem);
  prepare_dir(out_dir);
  write_trajectory_csv(out_dir / "trajectory.csv", cfg.grid, traj);
  return traj;
}

Observations cmd_make_obs(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  auto obs = make_observations(cfg.problem(), cfg.noise.level, cfg.noise.seed);
  prepare_dir(out_dir);
  save_observations(obs, cfg.grid, out_dir / "observations.csv");
  return obs;
}

IdentifyResult cmd_identify(const ExperimentConfig& cfg, const std::filesystem::path& obs_path,
                            const std::filesystem::path& out_dir, const IterationObserver& observer) {
  auto obs = load_observations(obs_path, cfg.grid);
  const PdeObjective objective(cfg.problem(), std::move(obs), cfg.coupling);
  auto result = identify(objective, cfg.optimizer, observer);

  prepare_dir(out_dir);
  {
    auto log = open_output(out_dir / "iterations.csv");
    write_iteration_log(log, result.history, cfg.optimizer.max_backtracks);
  }
  {
    auto out = open_output(out_dir / "theta_star.csv");
    const auto& th = result.theta.values();
    for (Eigen::Index q = 0; q < th.size(); ++q) out << (q ? "," : "") << "theta_" << q + 1;
    out << '\n';
    for (Eigen::Index q = 0; q < th.size(); ++q) out << (q ? "," : "") << format_real(th[q]);
    out << '\n';
  }
  write_trajectory_csv(out_dir / "recovered.csv", cfg.grid, solve_forward(cfg.problem(result.theta.values())));
  write_surface(out_dir / "incidence_surface.csv", cfg.incidences, result.theta.values());
  write_plot_script(out_dir / "plot.gp");
  return result;
}

Eigen::VectorXd finite_difference_gradient(const ForwardProblem& problem, const Observations& obs, double h) {
  const int m = problem.m();
  std::vector<std::future<double>> plus, minus;
  auto j_at = [&](Eigen::VectorXd theta) {
    const auto p = problem.with_theta(std::move(theta));
    return cost(p, solve_forward(p), obs).j_total;
  };
  for (int q = 0; q < m; ++q) {
    const Eigen::VectorXd e = Eigen::VectorXd::Unit(m, q) * h;
    plus.push_back(std::async(std::launch::async, j_at, Eigen::VectorXd(problem.theta + e)));
    minus.push_back(std::async(std::launch::async, j_at, Eigen::VectorXd(problem.theta - e)));
  }
  Eigen::VectorXd out(m);
  for (int q = 0; q < m; ++q) out[q] = (plus[q].get() - minus[q].get()) / (2.0 * h);
  return out;
}

double linearization_error(const ForwardProblem& problem, const Eigen::VectorXd& direction, double eps,
                           RCoupling coupling) {
  const auto base = solve_forward(problem);
  const auto moved = solve_forward(problem.with_theta(problem.theta + eps * direction));
  const auto lin = solve_linearized(problem, base, direction, coupling);
  const Field ds = (moved.S - base.S) / eps - lin.Sbar;
  const Field di = (moved.I - base.I) / eps - lin.Ibar;
  return l2_pair_norm(ds, di, problem.grid) / l2_pair_norm(lin.Sbar, lin.Ibar, problem.grid);
}

GradcheckReport cmd_gradcheck(const ExperimentConfig& cfg, const std::filesystem::path& obs_path,
                              const std::optional<Eigen::VectorXd>& theta, const std::filesystem::path& out_dir) {
  const auto obs = load_observations(obs_path, cfg.grid);
  const int m = static_cast<int>(cfg.incidences.size());
  Eigen::VectorXd at = theta ? *theta
                             : (cfg.optimizer.theta0 ? cfg.optimizer.theta0->values() : SimplexWeights::uniform(m).values());
  const auto problem = cfg.problem(at);

  GradcheckReport report;
  report.theta = at;
  const auto state = solve_forward(problem);
  const auto adjoint = solve_adjoint(problem, state, obs, cfg.coupling);
  const auto g_adj = gradient(problem, state, adjoint, at);
  const auto g_fd = finite_difference_gradient(problem, obs, 1e-5);
  for (int q = 0; q < m; ++q) {
    const double denom = std::max(std::abs(g_fd[q]), 1e-300);
    report.components.push_back({q + 1, g_adj[q], g_fd[q], std::abs(g_adj[q] - g_fd[q]) / denom});
  }

  report.direction = Eigen::VectorXd::Zero(m);
  report.direction[0] = 1.0;
  if (m >= 2) report.direction[1] = -1.0;
  for (double eps : {1e-4, 5e-5}) {
    report.linearization.push_back({eps, linearization_error(problem, report.direction, eps, cfg.coupling)});
  }

  prepare_dir(out_dir);
  auto out = open_output(out_dir / "gradcheck.csv");
  out << "check,index,adjoint,finite_difference,rel_error\n";
  for (const auto& c : report.components) {
    out << "gradient," << c.component << ',' << format_real(c.adjoint) << ',' << format_real(c.finite_difference) << ','
        << format_real(c.rel_error) << '\n';
  }
  for (const auto& l : report.linearization) {
    out << "linearization," << format_real(l.epsilon) << ",,," << format_real(l.rel_error) << '\n';
  }
  return report;
}

}  // namespace incw
