#include "adl/radar.hpp"

#include <algorithm>
#include <cmath>

namespace adl {

namespace {

Eigen::VectorXd checked_initial(Index p, const Eigen::VectorXd& beta0) {
  if (p < 1) throw ConfigError("dimension must be at least 1");
  if (beta0.size() != p) throw ConfigError("initial estimate has the wrong dimension");
  return beta0;
}

}  // namespace

OnlineLasso::OnlineLasso(Index p, EpochSchedule schedule, const Eigen::VectorXd& beta0,
                         DualAveragingOptions options)
    : optimizer_(std::move(schedule), checked_initial(p, beta0), options), gradient_(p) {}

OnlineLasso::OnlineLasso(Index p, EpochSchedule schedule, DualAveragingOptions options)
    : OnlineLasso(p, std::move(schedule), Eigen::VectorXd::Zero(std::max<Index>(p, 0)), options) {}

bool OnlineLasso::observe(const Eigen::Ref<const Eigen::VectorXd>& x, double y, const GlmFamily& family) {
  const Index p = dimension();
  if (x.size() != p) throw ContractViolation("observation has the wrong dimension");
  const double eta = x.dot(optimizer_.iterate());
  const double residual = family.link_deriv(eta) - y;
  if (!std::isfinite(residual)) throw DataError("non-finite residual in online lasso update");
  gradient_.noalias() = x * residual;
  const double curvature = family.link_second_deriv(eta) * x.squaredNorm() / static_cast<double>(p);
  return optimizer_.step(gradient_, curvature);
}

}  // namespace adl
