#pragma once

#include <string_view>

#include <Eigen/Core>

#include "adl/errors.hpp"

namespace adl {

enum class FamilyKind { logistic, gaussian };

/// Canonical exponential-family GLM with unit dispersion.
///
/// The family is identified by its log-partition function: logistic uses
/// log(1 + e^t), gaussian uses t^2 / 2. Only the first and second derivatives
/// enter the estimating equations; the value itself is used by the batch
/// objective in tests.
class GlmFamily {
 public:
  explicit GlmFamily(FamilyKind kind) : kind_(kind) {}

  /// Parses "logistic" or "gaussian"; anything else is a ConfigError.
  static GlmFamily from_name(std::string_view name);

  FamilyKind kind() const { return kind_; }
  std::string_view name() const;

  double link_value(double t) const;
  double link_deriv(double t) const;
  double link_second_deriv(double t) const;

  /// Single-observation score x * (mean(x'beta) - y).
  Eigen::VectorXd point_gradient(const Eigen::Ref<const Eigen::VectorXd>& x, double y,
                                 const Eigen::Ref<const Eigen::VectorXd>& beta) const;

 private:
  FamilyKind kind_;
};

}  // namespace adl
