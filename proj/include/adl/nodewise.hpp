#pragma once

#include <Eigen/Core>

#include "adl/dual_averaging.hpp"
#include "adl/glm_family.hpp"
#include "adl/schedule.hpp"

namespace adl {

/// Where the nodewise l1 penalty enters the dual-averaging step.
///
/// `prox`: the gradient is the smooth part only and the penalty is handled in
/// closed form by the prox step (sparse iterates). `subgradient`: the penalty
/// is added to the stochastic gradient as lambda' * sign(r_{-j}) and the prox
/// step carries no penalty.
enum class NodewisePenalty { prox, subgradient };

/// Stochastic (sub)gradient of the weighted nodewise objective for r with r[j] = -1:
///
///     x_{-j} (x'r) phi''(x'plugged_beta) + lambda' sign(r_{-j}),   sign(0) = 0.
///
/// Coordinate j of the result is always 0.
Eigen::VectorXd nodewise_gradient(const Eigen::Ref<const Eigen::VectorXd>& x,
                                  const Eigen::Ref<const Eigen::VectorXd>& r,
                                  const Eigen::Ref<const Eigen::VectorXd>& plugged_beta, Index j,
                                  double lambda_prime, const GlmFamily& family);

/// One-pass nodewise lasso for a single target coordinate j whose weighted
/// loss drifts with the online lasso estimate.
///
/// The weight phi''(x'beta) uses a lasso estimate frozen at the start of each
/// nodewise epoch and refreshed only at the boundaries n'_k. Coordinate j is
/// pinned at -1 throughout. The state is O(p) and holds no observations.
class OnlineNodewise {
 public:
  /// `schedule.offset` must be n_1, the first lasso boundary. gamma0[j] is
  /// overwritten with -1.
  OnlineNodewise(Index p, Index j, EpochSchedule schedule, Eigen::VectorXd gamma0,
                 DualAveragingOptions options = {}, NodewisePenalty penalty = NodewisePenalty::prox);
  /// Zero initial point (pinned).
  OnlineNodewise(Index p, Index j, EpochSchedule schedule, DualAveragingOptions options = {},
                 NodewisePenalty penalty = NodewisePenalty::prox);

  /// Freezes beta^(n_1) as the plugged estimate for the first nodewise epoch.
  void activate(const Eigen::Ref<const Eigen::VectorXd>& lasso_estimate);

  /// Consumes observation `global_index` (must be n_1 + 1, n_1 + 2, ... in order).
  /// `latest_lasso` is the held lasso estimate at this index; it is only read
  /// when this observation closes a nodewise epoch. Returns true in that case.
  bool observe(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& latest_lasso,
               Index global_index, const GlmFamily& family);

  /// Held estimate, piecewise constant between the boundaries n'_k, entry j = -1.
  const Eigen::VectorXd& current_estimate() const { return optimizer_.estimate(); }
  const Eigen::VectorXd& inner_iterate() const { return optimizer_.iterate(); }
  const Eigen::VectorXd& plugged_beta() const { return plugged_beta_; }

  Index target() const { return target_; }
  bool active() const { return active_; }
  Index observations_seen() const { return optimizer_.steps(); }
  const EpochSchedule& schedule() const { return optimizer_.schedule(); }
  const EpochDualAveraging& optimizer() const { return optimizer_; }

  Index footprint_scalars() const {
    return optimizer_.footprint_scalars() + plugged_beta_.size() + gradient_.size();
  }

 private:
  Index target_;
  NodewisePenalty penalty_;
  EpochDualAveraging optimizer_;
  Eigen::VectorXd plugged_beta_;
  Eigen::VectorXd gradient_;
  bool active_ = false;
};

}  // namespace adl
