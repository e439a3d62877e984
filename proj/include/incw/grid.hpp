#pragma once

#include <Eigen/Dense>

namespace incw {

/// Space-time field sampled on a SpaceTimeGrid: row j is the node x_j, column k the time level t_k.
/// Storage is column-major, so each time level is contiguous.
using Field = Eigen::MatrixXd;

/// Uniform discretization of (0, L) x (0, T) with nx spatial and nt temporal nodes, endpoints included.
/// Both node counts must be odd and at least 3 so that composite Simpson applies in each direction.
class SpaceTimeGrid {
 public:
  SpaceTimeGrid(double length, double horizon, int nx, int nt);

  double length() const noexcept { return length_; }
  double horizon() const noexcept { return horizon_; }
  int nx() const noexcept { return nx_; }
  int nt() const noexcept { return nt_; }
  double dx() const noexcept { return length_ / (nx_ - 1); }
  double dt() const noexcept { return horizon_ / (nt_ - 1); }
  double x(int j) const noexcept { return j * dx(); }
  double t(int k) const noexcept { return k * dt(); }

  Field zeros() const { return Field::Zero(nx_, nt_); }
  bool matches(const Field& f) const noexcept { return f.rows() == nx_ && f.cols() == nt_; }

  /// Throws DimensionError naming `what` when `f` is not nx x nt.
  void require_shape(const Field& f, const char* what) const;

  bool operator==(const SpaceTimeGrid&) const = default;

 private:
  double length_;
  double horizon_;
  int nx_;
  int nt_;
};

}  // namespace incw
