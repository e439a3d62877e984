#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

#include "incw/error.hpp"
#include "incw/incidence.hpp"

using namespace incw;

namespace {

std::vector<IncidenceSpec> whole_catalog() {
  return {IncidenceSpec(Bilinear{0.4}), IncidenceSpec(Saturated{0.4, 1.0}),
          IncidenceSpec(BeddingtonDeAngelis{0.4, 1.0, 0.5}), IncidenceSpec(StandardIncidence{0.4}),
          IncidenceSpec(DoubleExposure{0.4, 0.5})};
}

}  // namespace

TEST_CASE("incidence values at the twin-experiment initial state") {
  CHECK(incidence_value(IncidenceSpec(Bilinear{0.4}), 0.85, 0.15, 0.0) == doctest::Approx(0.051).epsilon(1e-14));
  CHECK(incidence_value(IncidenceSpec(Saturated{0.4, 1.0}), 0.85, 0.15, 0.0) ==
        doctest::Approx(0.4 * 0.85 * 0.15 / 1.15).epsilon(1e-14));
  CHECK(incidence_value(IncidenceSpec(Saturated{0.4, 1.0}), 0.85, 0.15, 0.0) ==
        doctest::Approx(0.0443478260869565).epsilon(1e-12));
  CHECK(incidence_dS(IncidenceSpec(Bilinear{0.4}), 0.85, 0.15, 0.0) == doctest::Approx(0.06).epsilon(1e-14));
  CHECK(incidence_dI(IncidenceSpec(Saturated{0.4, 1.0}), 0.85, 0.15, 0.0) ==
        doctest::Approx(0.257088846880907).epsilon(1e-12));
  for (const auto& f : whole_catalog()) CHECK(incidence_value(f, 0.0, 0.5, 0.2) == 0.0);
}

TEST_CASE("every variant vanishes on the axes") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (const auto& f : whole_catalog()) {
    for (int n = 0; n < 1000; ++n) {
      const double a = u(rng), b = u(rng);
      REQUIRE(incidence_value(f, 0.0, a, b) == 0.0);
      REQUIRE(incidence_value(f, a, 0.0, b) == 0.0);
    }
  }
  // dI carries a factor s for these three.
  for (const auto& f : {IncidenceSpec(Bilinear{0.4}), IncidenceSpec(Saturated{0.4, 1.0}), IncidenceSpec(DoubleExposure{0.4, 0.5})}) {
    CHECK(incidence_dI(f, 0.0, 0.3, 0.1) == 0.0);
  }
}

TEST_CASE("analytic partials agree with central differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  const double h = 1e-6;
  for (const auto& f : whole_catalog()) {
    CAPTURE(f.to_string());
    for (int n = 0; n < 200; ++n) {
      const double s = u(rng), i = u(rng), r = u(rng);
      const double fd_s = (incidence_value(f, s + h, i, r) - incidence_value(f, s - h, i, r)) / (2 * h);
      const double fd_i = (incidence_value(f, s, i + h, r) - incidence_value(f, s, i - h, r)) / (2 * h);
      const double fd_r = (incidence_value(f, s, i, r + h) - incidence_value(f, s, i, r - h)) / (2 * h);
      REQUIRE(std::abs(incidence_dS(f, s, i, r) - fd_s) <= 1e-6 * std::abs(fd_s));
      REQUIRE(std::abs(incidence_dI(f, s, i, r) - fd_i) <= 1e-6 * std::abs(fd_i));
      REQUIRE(std::abs(incidence_dR(f, s, i, r) - fd_r) <= 1e-6 * std::max(std::abs(fd_r), 1e-3));
    }
  }
}

TEST_CASE("standard incidence on the unit total equals bilinear") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const IncidenceSpec std_inc(StandardIncidence{0.4}), bil(Bilinear{0.4});
  for (int n = 0; n < 500; ++n) {
    const double s = u(rng), i = u(rng) * (1.0 - s), r = 1.0 - s - i;
    CHECK(incidence_value(std_inc, s, i, r) == doctest::Approx(incidence_value(bil, s, i, r)).epsilon(1e-14));
  }
  CHECK(incidence_value(std_inc, 0.0, 0.0, 0.0) == 0.0);
  CHECK(incidence_dS(std_inc, 0.0, 0.0, 0.0) == 0.0);
  CHECK(incidence_dI(std_inc, 0.0, 0.0, 0.0) == 0.0);
}

TEST_CASE("catalog parsing and validation") {
  const auto f = IncidenceSpec::parse("saturated:0.4,1.0");
  CHECK(f == IncidenceSpec(Saturated{0.4, 1.0}));
  CHECK(IncidenceSpec::parse(f.to_string()) == f);
  CHECK(IncidenceSpec::parse("beddington:0.4,1.0,1.0") == IncidenceSpec(BeddingtonDeAngelis{0.4, 1.0, 1.0}));
  CHECK(IncidenceSpec::parse("double:0.4,0.5") == IncidenceSpec(DoubleExposure{0.4, 0.5}));
  CHECK(IncidenceSpec::parse("standard:0.4").depends_on_r());
  CHECK_FALSE(IncidenceSpec::parse("bilinear:0.4").depends_on_r());
  CHECK_THROWS_AS(IncidenceSpec::parse("logistic:0.4"), InvalidInput);
  CHECK_THROWS_AS(IncidenceSpec::parse("saturated:0.4"), InvalidInput);
  CHECK_THROWS_AS(IncidenceSpec::parse("bilinear:abc"), InvalidInput);
  CHECK_THROWS_AS(IncidenceSpec(Bilinear{0.0}), InvalidInput);
  CHECK_THROWS_AS(IncidenceSpec(Saturated{0.4, -1.0}), InvalidInput);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(incidence_value(f, nan, 0.1, 0.0), InvalidInput);
  CHECK_THROWS_AS(incidence_dS(f, 0.1, std::numeric_limits<double>::infinity(), 0.0), InvalidInput);
}
