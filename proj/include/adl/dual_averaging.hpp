#pragma once

#include <optional>

#include <Eigen/Core>

#include "adl/errors.hpp"
#include "adl/schedule.hpp"

namespace adl {

enum class EpochOutput { average, last_iterate };

/// How the configured prox strength and penalty are mapped onto the data.
///
/// `fixed` uses them verbatim. `adaptive` multiplies the prox strength by a
/// running mean of the per-step curvature proxy phi''(x'b) * ||x||^2 / p and
/// the penalty by the running RMS of gradient coordinates, which makes the
/// defaults insensitive to the overall scale of the covariates.
enum class StepScaling { fixed, adaptive };

struct DualAveragingOptions {
  double prox_strength = 1.0;
  StepScaling scaling = StepScaling::adaptive;
  EpochOutput epoch_output = EpochOutput::average;
};

/// Multi-epoch regularised dual averaging restarted from each epoch's output.
///
/// Shared engine behind the online lasso and the nodewise lasso. Holds four
/// p-vectors (iterate, dual sum, iterate sum, centre); the published estimate
/// is the centre, which is exactly the previous epoch's output.
class EpochDualAveraging {
 public:
  EpochDualAveraging(EpochSchedule schedule, Eigen::VectorXd initial, DualAveragingOptions options,
                     std::optional<Index> pinned = std::nullopt);

  /// Folds one stochastic gradient of the smooth loss into the current epoch.
  /// `curvature` and the gradient norm feed the adaptive scaling and are ignored
  /// under StepScaling::fixed. Returns true when this step closed an epoch.
  bool step(const Eigen::Ref<const Eigen::VectorXd>& gradient, double curvature);

  const Eigen::VectorXd& iterate() const { return iterate_; }
  /// Output of the most recent finished epoch (the initial point before that).
  const Eigen::VectorXd& estimate() const { return center_; }
  const EpochSchedule& schedule() const { return schedule_; }

  Index epoch() const { return epoch_; }
  Index step_in_epoch() const { return step_in_epoch_; }
  Index steps() const { return steps_; }

  double effective_lambda() const;
  double effective_strength() const;

  /// Number of doubles held by this object (vectors plus scalar state).
  Index footprint_scalars() const;

 private:
  EpochSchedule schedule_;
  DualAveragingOptions options_;
  std::optional<Index> pinned_;

  Eigen::VectorXd iterate_;
  Eigen::VectorXd dual_sum_;
  Eigen::VectorXd iterate_sum_;
  Eigen::VectorXd center_;

  Index epoch_ = 0;
  Index step_in_epoch_ = 0;
  Index steps_ = 0;
  double curvature_sum_ = 0.0;
  double gradient_sq_sum_ = 0.0;
};

}  // namespace adl
