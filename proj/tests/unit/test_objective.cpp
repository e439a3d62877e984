#include <cmath>

#include <doctest.h>

#include "fixtures.hpp"
#include "incw/error.hpp"
#include "incw/objective.hpp"

using namespace incw;

namespace {

Field sample(const SpaceTimeGrid& g, double (*fn)(double, double)) {
  Field f(g.nx(), g.nt());
  for (int k = 0; k < g.nt(); ++k)
    for (int j = 0; j < g.nx(); ++j) f(j, k) = fn(g.x(j), g.t(k));
  return f;
}

}  // namespace

TEST_CASE("Simpson on constants and cubics") {
  const SpaceTimeGrid g(2.0, 10.0, 5, 5);
  CHECK(simpson2d(Field::Ones(5, 5), g) == doctest::Approx(20.0).epsilon(1e-14));
  const double x2t = simpson2d(sample(g, [](double x, double t) { return x * x * t; }), g);
  CHECK(std::abs(x2t - 400.0 / 3.0) <= 1e-12 * 400.0 / 3.0);
  // x^3 t^3: (16/4) * (10^4/4) = 10000
  const double cubic = simpson2d(sample(g, [](double x, double t) { return x * x * x * t * t * t; }), g);
  CHECK(std::abs(cubic - 10000.0) <= 1e-12 * 10000.0);
}

TEST_CASE("Simpson error drops by sixteen under halving") {
  const double exact = (1.0 - std::cos(2.0)) * (1.0 - std::cos(10.0));
  const auto err = [&](int n) {
    const SpaceTimeGrid g(2.0, 10.0, n, n);
    return std::abs(simpson2d(sample(g, [](double x, double t) { return std::sin(x) * std::sin(t); }), g) - exact);
  };
  const double ratio = err(41) / err(81);
  CHECK(ratio >= 14.0);
  CHECK(ratio <= 18.0);
}

TEST_CASE("Simpson rejects bad shapes") {
  const SpaceTimeGrid g(2.0, 10.0, 5, 5);
  CHECK_THROWS_AS(simpson2d(Field::Ones(5, 7), g), DimensionError);
  CHECK_THROWS_AS(simpson2d(Field::Ones(5, 4), SpaceTimeGrid(2.0, 10.0, 5, 5)), DimensionError);
  CHECK_THROWS_AS(SpaceTimeGrid(2.0, 10.0, 5, 4), InvalidInput);
}

TEST_CASE("cost and gradient with matching data reduce to the regularization") {
  const auto p = fixture::small_problem();
  const auto tr = solve_forward(p);
  const Observations obs{tr.S, tr.I, {}};
  const auto c = cost(p, tr, obs);
  CHECK(c.misfit_s == 0.0);
  CHECK(c.misfit_i == 0.0);
  CHECK(c.j_total == doctest::Approx(0.5 * 1e-4 * (0.04 + 0.09 + 0.25)).epsilon(1e-14));
  CHECK(c.j_total == doctest::Approx(1.9e-5).epsilon(1e-12));

  const auto adj = solve_adjoint(p, tr, obs);
  const Eigen::VectorXd g = gradient(p, tr, adj, p.theta);
  CHECK((g - Eigen::Vector3d(2e-5, 3e-5, 5e-5)).cwiseAbs().maxCoeff() <= 1e-10);

  const auto zero = p.with_theta(Eigen::Vector3d::Zero());
  CHECK(cost(zero, solve_forward(zero), obs).reg == 0.0);
}

TEST_CASE("misfit is the Simpson integral of the squared residual") {
  const auto p = fixture::small_problem();
  const auto tr = solve_forward(p);
  Observations obs{tr.S, tr.I, {}};
  obs.S_ob.array() -= 0.1;
  obs.I_ob.array() += 0.2;
  const auto c = cost(p, tr, obs);
  CHECK(c.misfit_s == doctest::Approx(0.01 * 20.0).epsilon(1e-12));
  CHECK(c.misfit_i == doctest::Approx(0.04 * 20.0).epsilon(1e-12));
}

TEST_CASE("gradient follows a relabeling of the catalog") {
  const auto p = fixture::small_problem();
  const auto obs = make_observations(p.with_theta(Eigen::Vector3d(0.6, 0.1, 0.3)), 0.0, 0);
  const PdeObjective a(p, obs);
  auto q = p;
  q.incidences = {p.incidences[2], p.incidences[0], p.incidences[1]};
  const PdeObjective b(q, obs);
  const Eigen::Vector3d th(0.2, 0.3, 0.5);
  const auto ga = a.value_and_gradient(th);
  const auto gb = b.value_and_gradient(Eigen::Vector3d(th[2], th[0], th[1]));
  CHECK(ga.cost.j_total == doctest::Approx(gb.cost.j_total).epsilon(1e-12));
  CHECK(gb.gradient[0] == doctest::Approx(ga.gradient[2]).epsilon(1e-10));
  CHECK(gb.gradient[1] == doctest::Approx(ga.gradient[0]).epsilon(1e-10));
  CHECK(gb.gradient[2] == doctest::Approx(ga.gradient[1]).epsilon(1e-10));
}

TEST_CASE("adjoint gradient approaches central differences under refinement") {
  // The adjoint is discretized from the continuous system, so the gap is a discretization error.
  const auto gap = [](int nx, int nt) {
    const auto p = fixture::small_problem(Eigen::Vector3d(1.0 / 3, 1.0 / 3, 1.0 / 3), nx, nt);
    const auto obs = make_observations(p.with_theta(fixture::theta_true()), 0.0, 0);
    const PdeObjective obj(p, obs);
    const auto ev = obj.value_and_gradient(p.theta);
    const double h = 1e-5;
    double worst = 0.0;
    for (int q = 0; q < 3; ++q) {
      const Eigen::VectorXd e = Eigen::VectorXd::Unit(3, q) * h;
      const double fd = (obj.value(p.theta + e).j_total - obj.value(p.theta - e).j_total) / (2 * h);
      worst = std::max(worst, std::abs(ev.gradient[q] - fd) / std::abs(fd));
    }
    return worst;
  };
  const double coarse = gap(21, 201);
  const double fine = gap(41, 401);
  const double finer = gap(81, 801);
  CHECK(fine < coarse);
  CHECK(finer < fine);
  CHECK(finer <= 1e-2);
}
