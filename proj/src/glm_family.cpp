#include "adl/glm_family.hpp"

#include <cmath>
#include <string>

namespace adl {

namespace {

void require_finite(double t) {
  if (!std::isfinite(t)) throw DomainError("link argument is not finite");
}

}  // namespace

GlmFamily GlmFamily::from_name(std::string_view name) {
  if (name == "logistic") return GlmFamily(FamilyKind::logistic);
  if (name == "gaussian") return GlmFamily(FamilyKind::gaussian);
  throw ConfigError("unknown family '" + std::string(name) + "' (expected logistic or gaussian)");
}

std::string_view GlmFamily::name() const {
  return kind_ == FamilyKind::logistic ? "logistic" : "gaussian";
}

double GlmFamily::link_value(double t) const {
  require_finite(t);
  if (kind_ == FamilyKind::gaussian) return 0.5 * t * t;
  // log(1 + e^t) without overflow for large t or underflow for very negative t.
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double GlmFamily::link_deriv(double t) const {
  require_finite(t);
  if (kind_ == FamilyKind::gaussian) return t;
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double GlmFamily::link_second_deriv(double t) const {
  require_finite(t);
  if (kind_ == FamilyKind::gaussian) return 1.0;
  // sigma(t) * sigma(-t) written in terms of e^{-|t|} so the result never goes negative.
  const double e = std::exp(-std::abs(t));
  const double d = 1.0 + e;
  return e / (d * d);
}

Eigen::VectorXd GlmFamily::point_gradient(const Eigen::Ref<const Eigen::VectorXd>& x, double y,
                                          const Eigen::Ref<const Eigen::VectorXd>& beta) const {
  if (x.size() != beta.size()) throw ContractViolation("point_gradient: dimension mismatch");
  return x * (link_deriv(x.dot(beta)) - y);
}

}  // namespace adl
