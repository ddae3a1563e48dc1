#include "adl/nodewise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace adl {

namespace {

Index checked_target(Index p, Index j) {
  if (p < 1) throw ConfigError("dimension must be at least 1");
  if (j < 0 || j >= p) {
    throw ConfigError("nodewise target index " + std::to_string(j) + " outside [0, " + std::to_string(p) + ")");
  }
  return j;
}

Eigen::VectorXd pinned_initial(Index p, Index j, Eigen::VectorXd gamma0) {
  checked_target(p, j);
  if (gamma0.size() != p) throw ConfigError("initial nodewise vector has the wrong dimension");
  gamma0[j] = -1.0;
  return gamma0;
}

inline double sign0(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

Eigen::VectorXd nodewise_gradient(const Eigen::Ref<const Eigen::VectorXd>& x,
                                  const Eigen::Ref<const Eigen::VectorXd>& r,
                                  const Eigen::Ref<const Eigen::VectorXd>& plugged_beta, Index j,
                                  double lambda_prime, const GlmFamily& family) {
  const Index p = x.size();
  if (r.size() != p || plugged_beta.size() != p) throw ContractViolation("nodewise_gradient: dimension mismatch");
  if (j < 0 || j >= p) throw ContractViolation("nodewise_gradient: target out of range");
  if (r[j] != -1.0) throw ContractViolation("nodewise_gradient: r[j] must be -1");
  const double weight = family.link_second_deriv(x.dot(plugged_beta));
  Eigen::VectorXd g = x * (x.dot(r) * weight);
  if (lambda_prime != 0.0) {
    for (Index k = 0; k < p; ++k) g[k] += lambda_prime * sign0(r[k]);
  }
  g[j] = 0.0;
  return g;
}

OnlineNodewise::OnlineNodewise(Index p, Index j, EpochSchedule schedule, Eigen::VectorXd gamma0,
                               DualAveragingOptions options, NodewisePenalty penalty)
    : target_(checked_target(p, j)),
      penalty_(penalty),
      optimizer_(std::move(schedule), pinned_initial(p, j, std::move(gamma0)), options, j),
      plugged_beta_(Eigen::VectorXd::Zero(p)),
      gradient_(p) {}

OnlineNodewise::OnlineNodewise(Index p, Index j, EpochSchedule schedule, DualAveragingOptions options,
                               NodewisePenalty penalty)
    : OnlineNodewise(p, j, std::move(schedule), Eigen::VectorXd::Zero(std::max<Index>(p, 1)), options, penalty) {}

void OnlineNodewise::activate(const Eigen::Ref<const Eigen::VectorXd>& lasso_estimate) {
  if (lasso_estimate.size() != plugged_beta_.size()) throw ContractViolation("lasso estimate has the wrong dimension");
  plugged_beta_ = lasso_estimate;
  active_ = true;
}

bool OnlineNodewise::observe(const Eigen::Ref<const Eigen::VectorXd>& x,
                             const Eigen::Ref<const Eigen::VectorXd>& latest_lasso, Index global_index,
                             const GlmFamily& family) {
  const Index p = plugged_beta_.size();
  if (x.size() != p || latest_lasso.size() != p) throw ContractViolation("observation has the wrong dimension");
  const Index start = optimizer_.schedule().offset;
  if (global_index <= start) {
    throw SequencingError("nodewise update at index " + std::to_string(global_index) +
                          " before activation at n1 + 1 = " + std::to_string(start + 1));
  }
  const Index expected = start + optimizer_.steps() + 1;
  if (global_index != expected) {
    throw SequencingError("nodewise update out of order: got index " + std::to_string(global_index) +
                          ", expected " + std::to_string(expected));
  }
  if (!active_) activate(latest_lasso);

  const Eigen::VectorXd& r = optimizer_.iterate();
  const double weight = family.link_second_deriv(x.dot(plugged_beta_));
  gradient_.noalias() = x * (x.dot(r) * weight);
  if (penalty_ == NodewisePenalty::subgradient) {
    const double lambda = optimizer_.effective_lambda();
    for (Index k = 0; k < p; ++k) gradient_[k] += lambda * sign0(r[k]);
  }
  gradient_[target_] = 0.0;
  const double curvature = weight * x.squaredNorm() / static_cast<double>(p);

  const bool closed = optimizer_.step(gradient_, curvature);
  if (closed) plugged_beta_ = latest_lasso;
  return closed;
}

}  // namespace adl
