#pragma once

#include <filesystem>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "incw/forward.hpp"
#include "incw/grid.hpp"
#include "incw/optimizer.hpp"
#include "incw/sensitivity.hpp"

namespace incw {

/// %.17g, which round-trips every double exactly.
std::string format_real(double v);

/// Long-format table: header `x,t,<names...>`, one row per node, time-major.
void write_space_time_csv(std::ostream& out, const SpaceTimeGrid& grid, std::initializer_list<std::string_view> names,
                          std::initializer_list<const Field*> fields);

void write_trajectory_csv(const std::filesystem::path& path, const SpaceTimeGrid& grid, const StateTrajectory& traj);
void write_adjoint_csv(const std::filesystem::path& path, const SpaceTimeGrid& grid, const AdjointTrajectory& adj);

/// `k,theta_1..theta_m,j_total,misfit_s,misfit_i,reg,grad_norm,step,backtracks`.
/// A fallback record reports backtracks = max_backtracks + 1.
void write_iteration_log(std::ostream& out, const std::vector<IterationRecord>& history, int max_backtracks);

/// Splits one CSV line into numbers; throws ParseError tagged with `line_no` on any bad field.
std::vector<double> parse_csv_numbers(std::string_view line, std::size_t line_no);

}  // namespace incw
