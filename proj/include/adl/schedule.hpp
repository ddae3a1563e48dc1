#pragma once

#include <string>
#include <vector>

#include "adl/errors.hpp"

namespace adl {

/// Epoch lengths with their penalty levels and trust-region radii.
///
/// Epochs are 0-based internally. `offset` is the global observation count
/// at which the first epoch starts (0 for the lasso, n1 for the nodewise
/// schedule). Observations beyond the last configured epoch keep repeating
/// the final epoch's (length, lambda, radius), so the schedule never runs out.
struct EpochSchedule {
  std::vector<Index> lengths;
  std::vector<double> lambdas;
  std::vector<double> radii;
  Index offset = 0;

  Index epochs() const { return static_cast<Index>(lengths.size()); }

  /// Throws ConfigError unless counts match, K >= 1, lengths > 0,
  /// lambdas >= 0 and non-increasing, radii > 0 and strictly decreasing.
  void validate() const;

  Index length(Index epoch) const;
  double lambda(Index epoch) const;
  double radius(Index epoch) const;

  /// Global index of the last observation of `epoch` (n_k for k = epoch + 1).
  Index boundary(Index epoch) const;

  /// Smallest boundary n_k with n_k >= index.
  Index first_boundary_at_or_after(Index index) const;
};

/// Geometric schedule generator: T_k = T_1 * growth^(k-1), lambda_k and R_k
/// shrink by `decay` per epoch. Non-positive fields mean "resolve default".
struct ScheduleSpec {
  Index first_length = 0;  // default max(8, ceil(length_log_factor * log p))
  double length_log_factor = 3.2;
  double growth = 2.0;
  double lambda1 = -1.0;  // default lambda_scale * sqrt(log p / T_1)
  double lambda_scale = 0.5;
  double radius1 = 20.0;
  double decay = 0.7071067811865476;  // 2^{-1/2}
  Index epochs = 24;
};

EpochSchedule make_schedule(const ScheduleSpec& spec, Index p, Index offset);

/// Lasso and nodewise schedules resolved together, plus the derived indices
/// n_1, n'_1 and the debiasing start n_l.
struct ResolvedSchedules {
  EpochSchedule lasso;
  EpochSchedule nodewise;
  Index n1 = 0;
  Index n1_prime = 0;
  Index start_index = 0;  // n_l
};

ResolvedSchedules resolve_schedules(const ScheduleSpec& lasso, const ScheduleSpec& nodewise, Index p);

/// Multi-line human-readable dump of both schedules and n_l.
std::string describe(const ResolvedSchedules& schedules, Index shown_epochs);

}  // namespace adl
