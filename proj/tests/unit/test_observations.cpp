#include <cmath>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "fixtures.hpp"
#include "incw/error.hpp"
#include "incw/observations.hpp"

using namespace incw;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

ForwardProblem twin_problem() {
  return {SpaceTimeGrid(2.0, 10.0, 101, 1001), ModelParams{}, fixture::twin_catalog(), fixture::theta_true()};
}

}  // namespace

TEST_CASE("zero noise reproduces the clean solve") {
  const auto p = fixture::small_problem();
  const auto obs = make_observations(p, 0.0, 42);
  const auto tr = solve_forward(p);
  CHECK(obs.S_ob == tr.S);
  CHECK(obs.I_ob == tr.I);
  REQUIRE(obs.meta.true_theta);
  CHECK(obs.meta.true_theta->values() == p.theta);
  CHECK_THROWS_AS(make_observations(p, -0.1, 1), InvalidInput);
}

TEST_CASE("noise statistics on the twin grid") {
  const auto p = twin_problem();
  const auto tr = solve_forward(p);
  const auto obs = make_observations(p, 0.02, 42);
  const double a_s = tr.S.cwiseAbs().maxCoeff();
  const double a_i = tr.I.cwiseAbs().maxCoeff();
  const Eigen::ArrayXXd zs = (obs.S_ob - tr.S).array() / a_s;
  const Eigen::ArrayXXd zi = (obs.I_ob - tr.I).array() / a_i;
  const double n = static_cast<double>(zs.size());
  const double sd = std::sqrt((zs - zs.mean()).square().sum() / (n - 1));
  CHECK(sd >= 0.018);
  CHECK(sd <= 0.022);
  const double bound = 3.0 * 0.02 / std::sqrt(n);
  CHECK(std::abs(zs.mean()) <= bound);
  CHECK(std::abs(zi.mean()) <= bound);
}

TEST_CASE("same seed gives identical data, a new seed does not") {
  const auto p = fixture::small_problem();
  const auto a = make_observations(p, 0.02, 7);
  const auto b = make_observations(p, 0.02, 7);
  const auto c = make_observations(p, 0.02, 8);
  CHECK(a.S_ob == b.S_ob);
  CHECK(a.I_ob == b.I_ob);
  CHECK(a.S_ob != c.S_ob);
}

TEST_CASE("save and load round trip") {
  const auto dir = fixture::scratch_dir("obs_roundtrip");
  const auto p = fixture::small_problem();
  const auto obs = make_observations(p, 0.02, 42);
  save_observations(obs, p.grid, dir / "o.csv");
  const auto back = load_observations(dir / "o.csv");
  CHECK(back.grid == p.grid);
  CHECK(back.obs.S_ob == obs.S_ob);
  CHECK(back.obs.I_ob == obs.I_ob);
  CHECK(back.obs.meta.seed == 42);
  CHECK(back.obs.meta.noise_level == 0.02);
  REQUIRE(back.obs.meta.true_theta);
  CHECK(back.obs.meta.true_theta->values() == p.theta);
  CHECK_NOTHROW(load_observations(dir / "o.csv", p.grid));
  CHECK_THROWS_AS(load_observations(dir / "o.csv", SpaceTimeGrid(2.0, 10.0, 21, 101)), DimensionError);
}

TEST_CASE("malformed files") {
  const auto dir = fixture::scratch_dir("obs_bad");
  const auto p = fixture::small_problem();
  save_observations(make_observations(p, 0.02, 1), p.grid, dir / "o.csv");
  const std::string text = slurp(dir / "o.csv");

  // Cut in the middle of the last row.
  spit(dir / "cut.csv", text.substr(0, text.size() - 10));
  CHECK_THROWS_AS(load_observations(dir / "cut.csv"), ParseError);

  // Drop the final newline only.
  spit(dir / "nonl.csv", text.substr(0, text.size() - 1));
  CHECK_THROWS_AS(load_observations(dir / "nonl.csv"), ParseError);

  // Drop one whole row.
  const auto last_row = text.rfind('\n', text.size() - 2);
  spit(dir / "short.csv", text.substr(0, last_row + 1));
  CHECK_THROWS_AS(load_observations(dir / "short.csv"), DimensionError);

  std::string garbled = text;
  garbled.replace(garbled.find('\n', garbled.find("x,t")) + 1, 1, "q");
  spit(dir / "garbled.csv", garbled);
  try {
    load_observations(dir / "garbled.csv");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  CHECK_THROWS_AS(load_observations(dir / "missing.csv"), InvalidInput);
}
