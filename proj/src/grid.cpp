#include "incw/grid.hpp"

#include <cmath>
#include <string>

#include "incw/error.hpp"

namespace incw {

SpaceTimeGrid::SpaceTimeGrid(double length, double horizon, int nx, int nt)
    : length_(length), horizon_(horizon), nx_(nx), nt_(nt) {
  if (!std::isfinite(length) || length <= 0.0) throw InvalidInput("grid length must be positive");
  if (!std::isfinite(horizon) || horizon <= 0.0) throw InvalidInput("grid horizon must be positive");
  if (nx < 3 || nx % 2 == 0) throw InvalidInput("nx must be odd and >= 3, got " + std::to_string(nx));
  if (nt < 3 || nt % 2 == 0) throw InvalidInput("nt must be odd and >= 3, got " + std::to_string(nt));
}

void SpaceTimeGrid::require_shape(const Field& f, const char* what) const {
  if (!matches(f)) {
    throw DimensionError(std::string(what) + " is " + std::to_string(f.rows()) + "x" + std::to_string(f.cols()) +
                         ", grid is " + std::to_string(nx_) + "x" + std::to_string(nt_));
  }
}

}  // namespace incw
