#include <cmath>
#include <random>

#include <doctest.h>

#include "fixtures.hpp"
#include "incw/error.hpp"
#include "incw/objective.hpp"
#include "incw/observations.hpp"
#include "incw/sensitivity.hpp"

using namespace incw;

namespace {

Observations exact_obs(const StateTrajectory& tr) { return {tr.S, tr.I, {}}; }

Observations noisy_obs(const ForwardProblem& p) { return make_observations(p, 0.02, 42); }

double dual_rel_gap(const ForwardProblem& p, const Observations& obs, const Eigen::VectorXd& dir, RCoupling c) {
  const auto tr = solve_forward(p);
  const auto lin = solve_linearized(p, tr, dir, c);
  const auto adj = solve_adjoint(p, tr, obs, c);
  const double lhs = 2.0 * inner_product(tr.S - obs.S_ob, lin.Sbar, p.grid) +
                     2.0 * inner_product(tr.I - obs.I_ob, lin.Ibar, p.grid);
  // gradient() adds sigma theta; remove it to leave the incidence integrals.
  const Eigen::VectorXd integrals = gradient(p, tr, adj, p.theta) - p.params.sigma * p.theta;
  const double rhs = dir.dot(integrals);
  return std::abs(lhs - rhs) / std::abs(lhs);
}

}  // namespace

TEST_CASE("zero direction gives a zero linearization") {
  const auto p = fixture::small_problem();
  const auto tr = solve_forward(p);
  const auto lin = solve_linearized(p, tr, Eigen::Vector3d::Zero());
  CHECK(lin.Sbar.isZero(0.0));
  CHECK(lin.Ibar.isZero(0.0));
  CHECK(lin.Rbar.isZero(0.0));
}

TEST_CASE("linearization is linear in the direction") {
  const auto p = fixture::small_problem();
  const auto tr = solve_forward(p);
  const Eigen::Vector3d d(0.3, -0.7, 0.4);
  const auto a = solve_linearized(p, tr, d);
  const auto b = solve_linearized(p, tr, 2.0 * d);
  CHECK((b.Sbar - 2.0 * a.Sbar).cwiseAbs().maxCoeff() <= 1e-12 * a.Sbar.cwiseAbs().maxCoeff());
  CHECK((b.Ibar - 2.0 * a.Ibar).cwiseAbs().maxCoeff() <= 1e-12 * a.Ibar.cwiseAbs().maxCoeff());
}

TEST_CASE("linearization matches difference quotients of the forward map") {
  const auto p = fixture::small_problem();
  const auto tr = solve_forward(p);
  const Eigen::Vector3d d(1.0, -0.5, -0.5);
  const auto lin = solve_linearized(p, tr, d);
  double prev = 1.0;
  for (double eps : {1e-3, 5e-4, 2.5e-4}) {
    const auto moved = solve_forward(p.with_theta(p.theta + eps * d));
    const Field q = (moved.I - tr.I) / eps;
    const double rel = (q - lin.Ibar).norm() / lin.Ibar.norm();
    CAPTURE(eps);
    CHECK(rel <= 1e-3);
    CHECK(rel < prev);
    prev = rel;
  }
}

TEST_CASE("adjoint terminal column is zero and matching data gives zero adjoints") {
  const auto p = fixture::small_problem();
  const auto tr = solve_forward(p);
  const auto adj = solve_adjoint(p, tr, noisy_obs(p));
  const int last = p.grid.nt() - 1;
  CHECK(adj.P1.col(last).isZero(0.0));
  CHECK(adj.P2.col(last).isZero(0.0));
  CHECK(adj.P3.col(last).isZero(0.0));

  for (auto c : {RCoupling::Frozen, RCoupling::Full}) {
    const auto z = solve_adjoint(p, tr, exact_obs(tr), c);
    CHECK(z.P1.isZero(0.0));
    CHECK(z.P2.isZero(0.0));
    CHECK(z.P3.isZero(0.0));
  }
}

TEST_CASE("P3 vanishes when r does not enter the linearization") {
  auto p = fixture::small_problem();
  const auto obs = noisy_obs(p);
  const auto frozen = solve_adjoint(p, solve_forward(p), obs, RCoupling::Frozen);
  CHECK(frozen.P3.cwiseAbs().maxCoeff() <= 1e-12);

  // An r-free catalog gives the same under either coupling.
  p.incidences = {IncidenceSpec(Bilinear{0.4}), IncidenceSpec(Saturated{0.4, 1.0})};
  p.theta = Eigen::Vector2d(0.4, 0.6);
  const auto full = solve_adjoint(p, solve_forward(p), make_observations(p, 0.02, 42), RCoupling::Full);
  CHECK(full.P3.cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(full.P1.cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("adjoint is linear in the data residual") {
  const auto p = fixture::small_problem();
  const auto tr = solve_forward(p);
  const auto obs = noisy_obs(p);
  Observations twice = obs;
  twice.S_ob = tr.S - 2.0 * (tr.S - obs.S_ob);
  twice.I_ob = tr.I - 2.0 * (tr.I - obs.I_ob);
  const auto a = solve_adjoint(p, tr, obs);
  const auto b = solve_adjoint(p, tr, twice);
  CHECK((b.P1 - 2.0 * a.P1).cwiseAbs().maxCoeff() <= 1e-12 * a.P1.cwiseAbs().maxCoeff());
  CHECK((b.P2 - 2.0 * a.P2).cwiseAbs().maxCoeff() <= 1e-12 * a.P2.cwiseAbs().maxCoeff());
}

TEST_CASE("duality between linearized and adjoint solves") {
  // Smooth residual: data from a different theta, no noise. The gap is a discretization error.
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int rep = 0; rep < 3; ++rep) {
    const Eigen::Vector3d d(n(rng), n(rng), n(rng));
    double prev = 1.0;
    for (int level : {1, 2, 4}) {
      const auto p = fixture::small_problem(fixture::theta_true(), 20 * level + 1, 200 * level + 1);
      const auto obs = make_observations(p.with_theta(Eigen::Vector3d(0.5, 0.3, 0.2)), 0.0, 1);
      const double gap = dual_rel_gap(p, obs, d, RCoupling::Full);
      CAPTURE(level);
      CHECK(gap < prev);
      prev = gap;
    }
    CHECK(prev <= 1e-2);
  }
}

TEST_CASE("shape errors") {
  const auto p = fixture::small_problem();
  const auto tr = solve_forward(p);
  CHECK_THROWS_AS(solve_linearized(p, tr, Eigen::Vector2d::Zero()), DimensionError);
  Observations bad{Field::Zero(3, 3), Field::Zero(3, 3), {}};
  CHECK_THROWS_AS(solve_adjoint(p, tr, bad), DimensionError);
}
