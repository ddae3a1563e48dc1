#include "adl/debias.hpp"

#include <array>
#include <cassert>
#include <cmath>
#include <string>
#include <tuple>

namespace adl {

void SummaryStats::Compensated::add(double v) {
  const double y = v - carry;
  const double t = sum + y;
  carry = (t - sum) - y;
  sum = t;
}

SummaryStats::SummaryStats(Index p, Index j, Index start_index)
    : target_(j), start_index_(start_index), last_index_(start_index) {
  if (p < 1) throw ConfigError("dimension must be at least 1");
  if (j < 0 || j >= p) {
    throw ConfigError("target index " + std::to_string(j) + " outside [0, " + std::to_string(p) + ")");
  }
  if (start_index < 0) throw ConfigError("start index must be non-negative");
  a1_ = Eigen::VectorXd::Zero(p);
  a2_ = Eigen::VectorXd::Zero(p);
  a2_carry_ = Eigen::VectorXd::Zero(p);
}

void SummaryStats::update(const Eigen::Ref<const Eigen::VectorXd>& x, double y,
                          const Eigen::Ref<const Eigen::VectorXd>& beta, const Eigen::Ref<const Eigen::VectorXd>& gamma,
                          const GlmFamily& family, Index index) {
  const Index p = dimension();
  if (x.size() != p || beta.size() != p || gamma.size() != p) {
    throw ContractViolation("summary update: dimension mismatch");
  }
  if (index <= start_index_) {
    throw SequencingError("summary update at index " + std::to_string(index) + " not after n_l = " +
                          std::to_string(start_index_));
  }
  if (index != last_index_ + 1) {
    throw SequencingError("summary update out of order: got index " + std::to_string(index) + ", expected " +
                          std::to_string(last_index_ + 1));
  }
  if (gamma[target_] != -1.0) throw ContractViolation("summary update: gamma[j] must be -1");

  const double eta = x.dot(beta);
  const double w = family.link_second_deriv(eta);
  const double r = family.link_deriv(eta) - y;
  const double g = x.dot(gamma);
  const double gw = g * w;
  if (!std::isfinite(r) || !std::isfinite(gw) || !std::isfinite(eta)) {
    throw DataError("non-finite summary increment at observation " + std::to_string(index));
  }

  a1_.noalias() += x * r;
  for (Index k = 0; k < p; ++k) {
    const double v = gw * x[k] - a2_carry_[k];
    const double t = a2_[k] + v;
    a2_carry_[k] = (t - a2_[k]) - v;
    a2_[k] = t;
  }
  a3_.add(gw * eta);
  a4_.add(gw * x[target_]);
  a5_.add(g * g * r * r);
  last_index_ = index;

  assert(a4_.sum == a2_[target_]);
}

double adl_point(const SummaryStats& stats, const Eigen::Ref<const Eigen::VectorXd>& beta_m,
                 const Eigen::Ref<const Eigen::VectorXd>& gamma_m) {
  if (beta_m.size() != stats.dimension() || gamma_m.size() != stats.dimension()) {
    throw ContractViolation("adl_point: dimension mismatch");
  }
  if (stats.a4() == 0.0) throw DegenerateInformation("a4 is zero; estimate not yet identifiable");
  const double numerator = stats.a1().dot(gamma_m) + stats.a2().dot(beta_m) - stats.a3();
  return beta_m[stats.target()] - numerator / stats.a4();
}

double adl_stderr(const SummaryStats& stats) {
  if (stats.a4() == 0.0) throw DegenerateInformation("a4 is zero; standard error not yet identifiable");
  return std::sqrt(stats.a5()) / std::abs(stats.a4());
}

std::pair<double, double> confidence_interval(double point, double std_error, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(std_error >= 0.0)) throw ContractViolation("standard error must be non-negative");
  const double half = normal_quantile(1.0 - alpha / 2.0) * std_error;
  return {point - half, point + half};
}

double normal_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("normal_quantile requires 0 < q < 1");
  if (q == 0.5) return 0.0;

  // Acklam's rational approximation, then one Halley step against erfc.
  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                           1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                           6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                           -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                           3.754408661907416e+00};
  constexpr double low = 0.02425;

  double x;
  if (q < low) {
    const double s = std::sqrt(-2.0 * std::log(q));
    x = (((((c[0] * s + c[1]) * s + c[2]) * s + c[3]) * s + c[4]) * s + c[5]) /
        ((((d[0] * s + d[1]) * s + d[2]) * s + d[3]) * s + 1.0);
  } else if (q <= 1.0 - low) {
    const double s = q - 0.5;
    const double r = s * s;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * s /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double s = std::sqrt(-2.0 * std::log1p(-q));
    x = -(((((c[0] * s + c[1]) * s + c[2]) * s + c[3]) * s + c[4]) * s + c[5]) /
        ((((d[0] * s + d[1]) * s + d[2]) * s + d[3]) * s + 1.0);
  }

  // Work with the smaller tail to keep the residual accurate.
  const double tail = q < 0.5 ? q : 1.0 - q;
  const double xt = q < 0.5 ? x : -x;  // xt < 0
  const double e = 0.5 * std::erfc(-xt / std::sqrt(2.0)) - tail;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(xt * xt / 2.0);
  const double refined = xt - u / (1.0 + xt * u / 2.0);
  return q < 0.5 ? refined : -refined;
}

AdlEstimate adl_estimate(const SummaryStats& stats, const Eigen::Ref<const Eigen::VectorXd>& beta_m,
                         const Eigen::Ref<const Eigen::VectorXd>& gamma_m, double alpha) {
  AdlEstimate est;
  est.m = stats.last_index();
  est.j = stats.target();
  est.alpha = alpha;
  est.point = adl_point(stats, beta_m, gamma_m);
  est.std_error = adl_stderr(stats);
  std::tie(est.ci_low, est.ci_high) = confidence_interval(est.point, est.std_error, alpha);
  return est;
}

}  // namespace adl
