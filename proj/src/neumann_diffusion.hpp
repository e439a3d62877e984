#pragma once

#include <vector>

#include <Eigen/Dense>

namespace incw::detail {

/// Backward-Euler diffusion step (I - dt d Lap) u_new = rhs on a uniform 1-D grid with
/// homogeneous Neumann boundaries imposed through mirror ghost nodes:
///
///   Lap u_0 = 2 (u_1 - u_0) / dx^2,  Lap u_{n-1} = 2 (u_{n-2} - u_{n-1}) / dx^2.
///
/// The matrix has constant coefficients, so the Thomas elimination factors are computed once.
/// Row sums are 1, hence constants are reproduced exactly up to rounding.
class NeumannDiffusion {
 public:
  NeumannDiffusion(int nx, double dx, double diffusivity, double dt);

  /// Overwrites `rhs` with the solution.
  void solve(Eigen::Ref<Eigen::VectorXd> rhs) const;

 private:
  int n_;
  double lower_;     // sub-diagonal in interior rows
  double upper_;     // super-diagonal in interior rows
  double last_lower_;  // sub-diagonal of the last row (ghost mirror doubles it)
  std::vector<double> c_prime_;
  std::vector<double> inv_denom_;
};

}  // namespace incw::detail
