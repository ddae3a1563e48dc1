#include "adl/dual_averaging.hpp"

#include <cmath>

#include "adl/prox.hpp"

namespace adl {

EpochDualAveraging::EpochDualAveraging(EpochSchedule schedule, Eigen::VectorXd initial,
                                       DualAveragingOptions options, std::optional<Index> pinned)
    : schedule_(std::move(schedule)), options_(options), pinned_(pinned), center_(std::move(initial)) {
  schedule_.validate();
  if (!(options_.prox_strength > 0.0)) throw ConfigError("prox strength must be positive");
  const Index p = center_.size();
  if (p < 1) throw ConfigError("dimension must be at least 1");
  if (pinned_ && (*pinned_ < 0 || *pinned_ >= p)) throw ConfigError("pinned coordinate out of range");
  iterate_ = center_;
  dual_sum_ = Eigen::VectorXd::Zero(p);
  iterate_sum_ = Eigen::VectorXd::Zero(p);
}

double EpochDualAveraging::effective_lambda() const {
  const double lambda = schedule_.lambda(epoch_);
  if (options_.scaling == StepScaling::fixed || steps_ == 0) return lambda;
  return lambda * std::sqrt(gradient_sq_sum_ / static_cast<double>(steps_));
}

double EpochDualAveraging::effective_strength() const {
  if (options_.scaling == StepScaling::fixed || steps_ == 0) return options_.prox_strength;
  const double mean_curvature = curvature_sum_ / static_cast<double>(steps_);
  // A stream of all-zero rows carries no curvature; keep the step well defined.
  return options_.prox_strength * (mean_curvature > 0.0 ? mean_curvature : 1.0);
}

bool EpochDualAveraging::step(const Eigen::Ref<const Eigen::VectorXd>& gradient, double curvature) {
  const Index p = center_.size();
  if (gradient.size() != p) throw ContractViolation("gradient dimension mismatch");

  ++steps_;
  ++step_in_epoch_;
  curvature_sum_ += curvature;
  gradient_sq_sum_ += gradient.squaredNorm() / static_cast<double>(p);
  dual_sum_ += gradient;

  prox_step_into(iterate_, dual_sum_, center_, schedule_.radius(epoch_), effective_lambda(), step_in_epoch_,
                 effective_strength(), pinned_);
  iterate_sum_ += iterate_;

  if (step_in_epoch_ < schedule_.length(epoch_)) return false;

  if (options_.epoch_output == EpochOutput::average) {
    center_ = iterate_sum_ / static_cast<double>(step_in_epoch_);
  } else {
    center_ = iterate_;
  }
  if (pinned_) center_[*pinned_] = iterate_[*pinned_];
  iterate_ = center_;
  dual_sum_.setZero();
  iterate_sum_.setZero();
  step_in_epoch_ = 0;
  ++epoch_;
  return true;
}

Index EpochDualAveraging::footprint_scalars() const {
  const Index vectors = iterate_.size() + dual_sum_.size() + iterate_sum_.size() + center_.size();
  return vectors + 2;
}

}  // namespace adl
