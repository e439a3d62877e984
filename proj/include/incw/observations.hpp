#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "incw/forward.hpp"
#include "incw/grid.hpp"
#include "incw/model.hpp"

namespace incw {

struct ObservationMeta {
  std::uint64_t seed = 0;
  double noise_level = 0.0;
  std::optional<SimplexWeights> true_theta;
};

/// Observed susceptible and infected densities on the full space-time grid.
struct Observations {
  Field S_ob;
  Field I_ob;
  ObservationMeta meta;
};

/// Twin-experiment data: a clean forward solve plus additive Gaussian noise scaled by each field's
/// max absolute value, S_ob = S + level * max|S| * N. Draws come from std::mt19937_64 seeded with
/// `seed`, all S nodes first then all I nodes, time-major. The true theta is recorded when it
/// lies on the simplex.
Observations make_observations(const ForwardProblem& problem, double noise_level, std::uint64_t seed);

/// Writes the `# incidence-weigher obs v1` header then `x,t,S_ob,I_ob` rows, time-major, 17
/// significant digits.
void save_observations(const Observations& obs, const SpaceTimeGrid& grid, const std::filesystem::path& path);

struct ObservationFile {
  SpaceTimeGrid grid;
  Observations obs;
};

/// Reads a file written by save_observations and recovers its grid from the coordinate columns.
/// Malformed content throws ParseError with the offending line; a row count that is not a whole
/// number of time levels throws DimensionError.
ObservationFile load_observations(const std::filesystem::path& path);

/// As above, and additionally requires the file to sit on `grid` (DimensionError otherwise).
Observations load_observations(const std::filesystem::path& path, const SpaceTimeGrid& grid);

}  // namespace incw
