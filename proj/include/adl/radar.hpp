#pragma once

#include <Eigen/Core>

#include "adl/dual_averaging.hpp"
#include "adl/glm_family.hpp"
#include "adl/schedule.hpp"

namespace adl {

/// One-pass online lasso by regularisation-annealed epoch dual averaging.
///
/// Each observation is consumed once: its score at the inner iterate is
/// folded into the dual sum and then dropped. The published estimate follows
/// the hold rule: it is the last finished epoch's output and only changes at
/// the epoch boundaries n_1 < n_2 < ...
class OnlineLasso {
 public:
  OnlineLasso(Index p, EpochSchedule schedule, const Eigen::VectorXd& beta0,
              DualAveragingOptions options = {});
  /// Zero initial point.
  OnlineLasso(Index p, EpochSchedule schedule, DualAveragingOptions options = {});

  /// Returns true if this observation closed an epoch (the estimate changed).
  bool observe(const Eigen::Ref<const Eigen::VectorXd>& x, double y, const GlmFamily& family);

  /// Held estimate; beta0 until the first boundary n_1 is reached.
  const Eigen::VectorXd& current_estimate() const { return optimizer_.estimate(); }
  const Eigen::VectorXd& inner_iterate() const { return optimizer_.iterate(); }

  Index dimension() const { return optimizer_.estimate().size(); }
  Index observations_seen() const { return optimizer_.steps(); }
  Index epoch() const { return optimizer_.epoch(); }
  const EpochSchedule& schedule() const { return optimizer_.schedule(); }
  const EpochDualAveraging& optimizer() const { return optimizer_; }

  Index footprint_scalars() const { return optimizer_.footprint_scalars() + gradient_.size(); }

 private:
  EpochDualAveraging optimizer_;
  Eigen::VectorXd gradient_;  // scratch, reused across observations
};

}  // namespace adl
