// incw: command-line front end for the incidence-weight identification library.
//
//   incw simulate|make-obs|identify|gradcheck --config <path> [--obs <path>] [--theta <csv>] [--out <dir>]
//
// Exit codes: 0 success, 1 validation or I/O error, 2 numerical divergence.
// INCW_LOG (any value other than empty or "0") prints each optimizer iteration to stderr.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "incw/config.hpp"
#include "incw/csv.hpp"
#include "incw/error.hpp"
#include "incw/experiment.hpp"

namespace {

bool verbose_from_env() {
  const char* v = std::getenv("INCW_LOG");
  return v != nullptr && *v != '\0' && std::string(v) != "0";
}

std::string join(const Eigen::VectorXd& v) {
  std::string out;
  for (Eigen::Index q = 0; q < v.size(); ++q) out += (q ? "," : "") + incw::format_real(v[q]);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identify the weights of candidate incidence functions in a reaction-diffusion SIR model"};
  app.require_subcommand(1);

  std::string config_path;
  std::string obs_path;
  std::string theta_text;
  std::string out_dir;

  auto add_common = [&](CLI::App* sub, bool needs_obs) {
    sub->add_option("--config", config_path, "Experiment config (INI)")->required()->check(CLI::ExistingFile);
    auto* obs = sub->add_option("--obs", obs_path, "Observation file");
    if (needs_obs) obs->required();
    sub->add_option("--theta", theta_text, "Weights as comma-separated reals");
    sub->add_option("--out", out_dir, "Output directory (default: [output] dir)");
  };
  auto* simulate = app.add_subcommand("simulate", "Forward solve; writes trajectory.csv");
  auto* make_obs = app.add_subcommand("make-obs", "Synthesize noisy observations; writes observations.csv");
  auto* identify = app.add_subcommand("identify", "Identify weights from observations");
  auto* gradcheck = app.add_subcommand("gradcheck", "Compare adjoint gradient and linearization to finite differences");
  add_common(simulate, false);
  add_common(make_obs, false);
  add_common(identify, true);
  add_common(gradcheck, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const auto cfg = incw::load_config(config_path);
    const std::filesystem::path out = out_dir.empty() ? cfg.output_dir : std::filesystem::path(out_dir);
    std::optional<Eigen::VectorXd> theta;
    if (!theta_text.empty()) theta = incw::parse_vector(theta_text);

    if (simulate->parsed()) {
      const auto traj = incw::cmd_simulate(cfg, theta, out);
      const double low = incw::min_entry(traj);
      if (low < -1e-12) std::cerr << "warning: negative density undershoot " << incw::format_real(low) << '\n';
      std::cout << "wrote " << (out / "trajectory.csv").string() << '\n';
    } else if (make_obs->parsed()) {
      incw::cmd_make_obs(cfg, out);
      std::cout << "wrote " << (out / "observations.csv").string() << '\n';
    } else if (identify->parsed()) {
      auto run_cfg = cfg;
      if (theta) run_cfg.optimizer.theta0 = incw::SimplexWeights(*theta);
      incw::IterationObserver observer;
      if (verbose_from_env()) {
        observer = [](const incw::IterationRecord& r) {
          std::cerr << "k=" << r.k << " J=" << incw::format_real(r.j.j_total) << " theta=" << join(r.theta)
                    << " |g|=" << incw::format_real(r.grad_norm) << " t=" << incw::format_real(r.step)
                    << (r.fallback ? " (line search fallback)" : "") << '\n';
        };
      }
      const auto result = incw::cmd_identify(run_cfg, obs_path, out, observer);
      std::cout << "theta* = " << join(result.theta.values()) << "  ("
                << (result.stop == incw::StopReason::Converged ? "converged" : "iteration cap") << " after "
                << result.history.back().k << " iterations)\n";
    } else if (gradcheck->parsed()) {
      const auto report = incw::cmd_gradcheck(cfg, obs_path, theta, out);
      for (const auto& c : report.components) {
        std::cout << "grad[" << c.component << "] adjoint=" << incw::format_real(c.adjoint)
                  << " fd=" << incw::format_real(c.finite_difference) << " rel=" << incw::format_real(c.rel_error) << '\n';
      }
      for (const auto& l : report.linearization) {
        std::cout << "linearization eps=" << incw::format_real(l.epsilon) << " rel=" << incw::format_real(l.rel_error)
                  << '\n';
      }
    }
  } catch (const incw::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
