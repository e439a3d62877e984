#include "neumann_diffusion.hpp"

#include <cmath>

#include "incw/error.hpp"

namespace incw::detail {

NeumannDiffusion::NeumannDiffusion(int nx, double dx, double diffusivity, double dt)
    : n_(nx), c_prime_(nx, 0.0), inv_denom_(nx, 0.0) {
  const double r = diffusivity * dt / (dx * dx);
  const double diag = 1.0 + 2.0 * r;
  lower_ = -r;
  upper_ = -r;
  last_lower_ = -2.0 * r;
  const double first_upper = -2.0 * r;

  // Forward sweep of the Thomas algorithm on the coefficient part only.
  double denom = diag;
  for (int j = 0; j < n_; ++j) {
    const double a = (j == 0) ? 0.0 : (j == n_ - 1 ? last_lower_ : lower_);
    const double c = (j == 0) ? first_upper : (j == n_ - 1 ? 0.0 : upper_);
    denom = diag - (j == 0 ? 0.0 : a * c_prime_[j - 1]);
    if (!std::isfinite(denom) || std::abs(denom) < 1e-300) {
      throw NumericalError("tridiagonal diffusion system is singular at row " + std::to_string(j));
    }
    inv_denom_[j] = 1.0 / denom;
    c_prime_[j] = c * inv_denom_[j];
  }
}

void NeumannDiffusion::solve(Eigen::Ref<Eigen::VectorXd> rhs) const {
  rhs[0] *= inv_denom_[0];
  for (int j = 1; j < n_; ++j) {
    const double a = (j == n_ - 1) ? last_lower_ : lower_;
    rhs[j] = (rhs[j] - a * rhs[j - 1]) * inv_denom_[j];
  }
  for (int j = n_ - 2; j >= 0; --j) rhs[j] -= c_prime_[j] * rhs[j + 1];
}

}  // namespace incw::detail
