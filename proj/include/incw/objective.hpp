#pragma once

#include <Eigen/Dense>

#include "incw/forward.hpp"
#include "incw/grid.hpp"
#include "incw/observations.hpp"
#include "incw/sensitivity.hpp"

namespace incw {

/// Tensor-product composite Simpson approximation of the integral of `field` over (0,L) x (0,T).
/// Throws InvalidInput for an even node count and DimensionError for a shape mismatch.
double simpson2d(const Field& field, const SpaceTimeGrid& grid);

/// L2(Q_T) inner product through simpson2d.
double inner_product(const Field& a, const Field& b, const SpaceTimeGrid& grid);

struct CostReport {
  double j_total = 0.0;
  double misfit_s = 0.0;
  double misfit_i = 0.0;
  double reg = 0.0;
};

/// misfit_s + misfit_i + sigma/2 |theta|^2 with the misfits integrated by simpson2d.
CostReport cost(const ForwardProblem& problem, const StateTrajectory& trajectory, const Observations& obs);

/// Reduced gradient: component i is the integral of f_i(S,I,R) (P2 - P1) plus sigma theta_i.
Eigen::VectorXd gradient(const ForwardProblem& problem, const StateTrajectory& trajectory,
                         const AdjointTrajectory& adjoint, const Eigen::VectorXd& theta);

struct Evaluation {
  CostReport cost;
  Eigen::VectorXd gradient;
};

/// Smooth function of theta as seen by the weight optimizer.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual int dimension() const = 0;
  virtual CostReport value(const Eigen::VectorXd& theta) const = 0;
  virtual Evaluation value_and_gradient(const Eigen::VectorXd& theta) const = 0;
};

/// The PDE-constrained cost theta -> J(theta, F(theta)) with the adjoint gradient.
class PdeObjective final : public Objective {
 public:
  /// `problem` supplies the grid, coefficients, and incidences; its theta is ignored.
  PdeObjective(ForwardProblem problem, Observations obs, RCoupling coupling = RCoupling::Full);

  int dimension() const override { return problem_.m(); }
  CostReport value(const Eigen::VectorXd& theta) const override;
  Evaluation value_and_gradient(const Eigen::VectorXd& theta) const override;

  const ForwardProblem& problem() const noexcept { return problem_; }
  const Observations& observations() const noexcept { return obs_; }
  RCoupling coupling() const noexcept { return coupling_; }

 private:
  ForwardProblem problem_;
  Observations obs_;
  RCoupling coupling_;
};

}  // namespace incw
