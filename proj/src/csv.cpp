#include "incw/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include "incw/error.hpp"

namespace incw {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_space_time_csv(std::ostream& out, const SpaceTimeGrid& grid, std::initializer_list<std::string_view> names,
                          std::initializer_list<const Field*> fields) {
  out << "x,t";
  for (auto n : names) out << ',' << n;
  out << '\n';
  for (const Field* f : fields) grid.require_shape(*f, "exported field");
  for (int k = 0; k < grid.nt(); ++k) {
    const std::string t = format_real(grid.t(k));
    for (int j = 0; j < grid.nx(); ++j) {
      out << format_real(grid.x(j)) << ',' << t;
      for (const Field* f : fields) out << ',' << format_real((*f)(j, k));
      out << '\n';
    }
  }
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

void write_trajectory_csv(const std::filesystem::path& path, const SpaceTimeGrid& grid, const StateTrajectory& traj) {
  auto out = open_for_write(path);
  write_space_time_csv(out, grid, {"S", "I", "R"}, {&traj.S, &traj.I, &traj.R});
}

void write_adjoint_csv(const std::filesystem::path& path, const SpaceTimeGrid& grid, const AdjointTrajectory& adj) {
  auto out = open_for_write(path);
  write_space_time_csv(out, grid, {"P1", "P2", "P3"}, {&adj.P1, &adj.P2, &adj.P3});
}

void write_iteration_log(std::ostream& out, const std::vector<IterationRecord>& history, int max_backtracks) {
  const auto m = history.empty() ? 0 : history.front().theta.size();
  out << 'k';
  for (Eigen::Index q = 0; q < m; ++q) out << ",theta_" << q + 1;
  out << ",j_total,misfit_s,misfit_i,reg,grad_norm,step,backtracks\n";
  for (const auto& rec : history) {
    out << rec.k;
    for (double v : rec.theta) out << ',' << format_real(v);
    out << ',' << format_real(rec.j.j_total) << ',' << format_real(rec.j.misfit_s) << ','
        << format_real(rec.j.misfit_i) << ',' << format_real(rec.j.reg) << ',' << format_real(rec.grad_norm) << ','
        << format_real(rec.step) << ',' << (rec.fallback ? max_backtracks + 1 : rec.backtracks) << '\n';
  }
}

std::vector<double> parse_csv_numbers(std::string_view line, std::size_t line_no) {
  std::vector<double> out;
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  for (;;) {
    const auto comma = line.find(',');
    const auto token = line.substr(0, comma);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw ParseError("bad numeric field '" + std::string(token) + "'", line_no);
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace incw
