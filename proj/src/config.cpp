#include "incw/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "incw/csv.hpp"
#include "incw/error.hpp"

namespace incw {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>, std::less<>> kSchema = {
    {"grid", {"L", "T", "nx", "nt"}},
    {"params", {"d1", "d2", "d3", "gamma", "sigma", "s0", "i0", "r0"}},
    {"incidences", {}},  // keys f1..fm, checked separately
    {"truth", {"theta_true"}},
    {"noise", {"level", "seed"}},
    {"optimizer",
     {"theta0", "epsilon", "max_iters", "t0", "armijo_c", "backtrack_ratio", "max_backtracks", "r_coupling"}},
    {"output", {"dir"}},
};

std::string context(const std::string& section, const std::string& key) { return "[" + section + "] " + key; }

double to_real(const std::string& text, const std::string& where) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) throw InvalidInput(where + ": '" + text + "' is not a number");
  return v;
}

template <class Int>
Int to_integer(const std::string& text, const std::string& where) {
  Int v{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) throw InvalidInput(where + ": '" + text + "' is not an integer");
  return v;
}

InitialProfile to_profile(const std::string& text, const std::string& where) {
  if (text.find(',') == std::string::npos) return InitialProfile(to_real(text, where));
  const auto v = parse_vector(text);
  return InitialProfile::nodal(std::vector<double>(v.begin(), v.end()));
}

}  // namespace

Eigen::VectorXd parse_vector(std::string_view text) {
  std::string compact(text);
  std::erase_if(compact, [](unsigned char c) { return std::isspace(c); });
  std::vector<double> v;
  try {
    v = parse_csv_numbers(compact, 0);
  } catch (const ParseError&) {
    throw InvalidInput("'" + std::string(text) + "' is not a comma-separated list of numbers");
  }
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

ForwardProblem ExperimentConfig::problem(Eigen::VectorXd theta) const {
  ForwardProblem p{grid, params, incidences, std::move(theta)};
  p.validate();
  return p;
}

ExperimentConfig parse_config(std::string_view text) {
  pt::ptree tree;
  {
    std::istringstream in{std::string(text)};
    try {
      pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
      throw ParseError("config: " + e.message(), e.line());
    }
  }

  for (const auto& [section, body] : tree) {
    const auto schema = kSchema.find(section);
    if (schema == kSchema.end()) throw InvalidInput("config: unknown section [" + section + "]");
    if (body.empty() && !body.data().empty()) throw InvalidInput("config: key '" + section + "' outside any section");
    for (const auto& [key, value] : body) {
      if (section == "incidences") continue;
      if (!schema->second.contains(key)) throw InvalidInput("config: unknown key " + context(section, key));
    }
  }

  ExperimentConfig cfg;
  auto get = [&](const std::string& section, const std::string& key) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(section + "." + key, '.'))) return *v;
    return std::nullopt;
  };
  auto real = [&](const std::string& section, const std::string& key, double fallback) {
    auto v = get(section, key);
    return v ? to_real(*v, context(section, key)) : fallback;
  };

  cfg.grid = SpaceTimeGrid(real("grid", "L", cfg.grid.length()), real("grid", "T", cfg.grid.horizon()),
                           get("grid", "nx") ? to_integer<int>(*get("grid", "nx"), "[grid] nx") : cfg.grid.nx(),
                           get("grid", "nt") ? to_integer<int>(*get("grid", "nt"), "[grid] nt") : cfg.grid.nt());

  auto& p = cfg.params;
  p.d1 = real("params", "d1", p.d1);
  p.d2 = real("params", "d2", p.d2);
  p.d3 = real("params", "d3", p.d3);
  p.gamma = real("params", "gamma", p.gamma);
  p.sigma = real("params", "sigma", p.sigma);
  if (auto v = get("params", "s0")) p.s0 = to_profile(*v, "[params] s0");
  if (auto v = get("params", "i0")) p.i0 = to_profile(*v, "[params] i0");
  if (auto v = get("params", "r0")) p.r0 = to_profile(*v, "[params] r0");
  p.validate();

  if (auto inc = tree.get_child_optional("incidences")) {
    std::map<int, std::string> ordered;
    for (const auto& [key, value] : *inc) {
      if (key.size() < 2 || key[0] != 'f') throw InvalidInput("config: incidence keys are f1, f2, ..., got '" + key + "'");
      const int index = to_integer<int>(key.substr(1), "config: incidence key '" + key + "'");
      if (index < 1 || !ordered.emplace(index, value.data()).second) {
        throw InvalidInput("config: bad or repeated incidence key '" + key + "'");
      }
    }
    int expected = 1;
    for (const auto& [index, spec] : ordered) {
      if (index != expected++) throw InvalidInput("config: incidence keys must run f1..fm without gaps");
      cfg.incidences.push_back(IncidenceSpec::parse(spec));
    }
  }
  if (cfg.incidences.empty()) throw InvalidInput("config: [incidences] must list at least f1");

  const auto theta = get("truth", "theta_true");
  if (!theta) throw InvalidInput("config: [truth] theta_true is required");
  cfg.theta_true = parse_vector(*theta);
  if (cfg.theta_true.size() != static_cast<Eigen::Index>(cfg.incidences.size())) {
    throw DimensionError("config: theta_true has " + std::to_string(cfg.theta_true.size()) + " entries for " +
                         std::to_string(cfg.incidences.size()) + " incidences");
  }

  cfg.noise.level = real("noise", "level", cfg.noise.level);
  if (!(cfg.noise.level >= 0.0)) throw InvalidInput("config: [noise] level must be >= 0");
  if (auto v = get("noise", "seed")) cfg.noise.seed = to_integer<std::uint64_t>(*v, "[noise] seed");

  auto& o = cfg.optimizer;
  if (auto v = get("optimizer", "theta0")) o.theta0 = SimplexWeights(parse_vector(*v));
  o.epsilon = real("optimizer", "epsilon", o.epsilon);
  o.t0 = real("optimizer", "t0", o.t0);
  o.armijo_c = real("optimizer", "armijo_c", o.armijo_c);
  o.backtrack_ratio = real("optimizer", "backtrack_ratio", o.backtrack_ratio);
  if (auto v = get("optimizer", "max_iters")) o.max_iters = to_integer<int>(*v, "[optimizer] max_iters");
  if (auto v = get("optimizer", "max_backtracks")) o.max_backtracks = to_integer<int>(*v, "[optimizer] max_backtracks");
  if (auto v = get("optimizer", "r_coupling")) {
    if (*v == "frozen") {
      cfg.coupling = RCoupling::Frozen;
    } else if (*v == "full") {
      cfg.coupling = RCoupling::Full;
    } else {
      throw InvalidInput("config: [optimizer] r_coupling must be 'frozen' or 'full'");
    }
  }
  o.validate(static_cast<int>(cfg.incidences.size()));

  if (auto v = get("output", "dir")) cfg.output_dir = *v;
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace incw
