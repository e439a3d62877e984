#include "incw/observations.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "incw/csv.hpp"
#include "incw/error.hpp"

namespace incw {
namespace {

constexpr std::string_view kMagic = "# incidence-weigher obs v1";
constexpr std::string_view kColumns = "x,t,S_ob,I_ob";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

ObservationMeta parse_header(std::string_view line) {
  line = trim(line);
  if (line.substr(0, kMagic.size()) != kMagic) throw ParseError("missing '# incidence-weigher obs v1' header", 1);
  line.remove_prefix(kMagic.size());

  ObservationMeta meta;
  bool have_seed = false;
  bool have_level = false;
  while (!line.empty()) {
    if (line.front() != ';') throw ParseError("expected ';' between header fields", 1);
    line.remove_prefix(1);
    const auto next = line.find(';');
    const auto field = trim(line.substr(0, next));
    line = next == std::string_view::npos ? std::string_view{} : line.substr(next);

    const auto eq = field.find('=');
    if (eq == std::string_view::npos) throw ParseError("header field '" + std::string(field) + "' lacks '='", 1);
    const auto key = trim(field.substr(0, eq));
    const auto value = trim(field.substr(eq + 1));
    if (key == "seed") {
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), meta.seed);
      if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) throw ParseError("bad seed", 1);
      have_seed = true;
    } else if (key == "level") {
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), meta.noise_level);
      if (value.empty() || ec != std::errc() || ptr != value.data() + value.size() || meta.noise_level < 0.0) {
        throw ParseError("bad noise level", 1);
      }
      have_level = true;
    } else if (key == "theta_true") {
      if (!value.empty()) {
        const auto v = parse_csv_numbers(value, 1);
        try {
          meta.true_theta = SimplexWeights(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
        } catch (const InvalidInput&) {
          throw ParseError("theta_true is not on the simplex", 1);
        }
      }
    } else {
      throw ParseError("unknown header field '" + std::string(key) + "'", 1);
    }
  }
  if (!have_seed || !have_level) throw ParseError("header must carry seed and level", 1);
  return meta;
}

}  // namespace

Observations make_observations(const ForwardProblem& problem, double noise_level, std::uint64_t seed) {
  if (!std::isfinite(noise_level) || noise_level < 0.0) throw InvalidInput("noise level must be finite and >= 0");
  const auto clean = solve_forward(problem);

  Observations obs{clean.S, clean.I, {seed, noise_level, std::nullopt}};
  if (SimplexWeights::admissible(problem.theta)) obs.meta.true_theta = SimplexWeights(problem.theta);
  if (noise_level == 0.0) return obs;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double amp_s = noise_level * clean.S.cwiseAbs().maxCoeff();
  const double amp_i = noise_level * clean.I.cwiseAbs().maxCoeff();
  // Field storage is column-major, so linear order is time-major.
  for (Eigen::Index n = 0; n < obs.S_ob.size(); ++n) obs.S_ob(n) += amp_s * normal(rng);
  for (Eigen::Index n = 0; n < obs.I_ob.size(); ++n) obs.I_ob(n) += amp_i * normal(rng);
  return obs;
}

void save_observations(const Observations& obs, const SpaceTimeGrid& grid, const std::filesystem::path& path) {
  grid.require_shape(obs.S_ob, "observed S");
  grid.require_shape(obs.I_ob, "observed I");
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open '" + path.string() + "' for writing");
  out << kMagic << "; seed=" << obs.meta.seed << "; level=" << format_real(obs.meta.noise_level) << "; theta_true=";
  if (obs.meta.true_theta) {
    const auto& th = obs.meta.true_theta->values();
    for (Eigen::Index q = 0; q < th.size(); ++q) out << (q ? "," : "") << format_real(th[q]);
  }
  out << '\n';
  write_space_time_csv(out, grid, {"S_ob", "I_ob"}, {&obs.S_ob, &obs.I_ob});
  if (!out) throw InvalidInput("failed writing '" + path.string() + "'");
}

ObservationFile load_observations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open observation file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (text.empty()) throw ParseError("empty observation file", 1);

  std::vector<std::string_view> lines;
  {
    std::string_view rest(text);
    while (!rest.empty()) {
      const auto nl = rest.find('\n');
      lines.push_back(rest.substr(0, nl));
      if (nl == std::string_view::npos) break;
      rest.remove_prefix(nl + 1);
    }
  }
  if (text.back() != '\n') throw ParseError("file is truncated (no final newline)", lines.size());

  auto meta = parse_header(lines[0]);
  if (lines.size() < 2 || trim(lines[1]) != kColumns) throw ParseError("expected column header 'x,t,S_ob,I_ob'", 2);

  std::vector<double> xs, ts, s_vals, i_vals;
  const std::size_t rows = lines.size() - 2;
  xs.reserve(rows);
  ts.reserve(rows);
  s_vals.reserve(rows);
  i_vals.reserve(rows);
  for (std::size_t n = 2; n < lines.size(); ++n) {
    const auto v = parse_csv_numbers(lines[n], n + 1);
    if (v.size() != 4) throw ParseError("expected 4 fields, got " + std::to_string(v.size()), n + 1);
    xs.push_back(v[0]);
    ts.push_back(v[1]);
    s_vals.push_back(v[2]);
    i_vals.push_back(v[3]);
  }
  if (rows == 0) throw DimensionError("observation file has no data rows");

  std::size_t nx = 0;
  while (nx < rows && ts[nx] == ts[0]) ++nx;
  if (rows % nx != 0) {
    throw DimensionError(std::to_string(rows) + " data rows is not a whole number of " + std::to_string(nx) +
                         "-node time levels");
  }
  const std::size_t nt = rows / nx;
  for (std::size_t n = 0; n < rows; ++n) {
    if (xs[n] != xs[n % nx] || ts[n] != ts[(n / nx) * nx]) {
      throw ParseError("rows are not a time-major tensor grid", n + 3);
    }
  }

  SpaceTimeGrid grid(xs[nx - 1], ts[rows - 1], static_cast<int>(nx), static_cast<int>(nt));
  Observations obs{Eigen::Map<const Field>(s_vals.data(), static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(nt)),
                   Eigen::Map<const Field>(i_vals.data(), static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(nt)),
                   std::move(meta)};
  return {grid, std::move(obs)};
}

Observations load_observations(const std::filesystem::path& path, const SpaceTimeGrid& grid) {
  auto file = load_observations(path);
  const auto& g = file.grid;
  const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); };
  if (g.nx() != grid.nx() || g.nt() != grid.nt() || !close(g.length(), grid.length()) ||
      !close(g.horizon(), grid.horizon())) {
    throw DimensionError("observation grid " + std::to_string(g.nx()) + "x" + std::to_string(g.nt()) + " on (0," +
                         format_real(g.length()) + ")x(0," + format_real(g.horizon()) + ") does not match the problem grid " +
                         std::to_string(grid.nx()) + "x" + std::to_string(grid.nt()));
  }
  return std::move(file.obs);
}

}  // namespace incw
