#include "adl/prox.hpp"

#include <algorithm>
#include <cmath>

namespace adl {

namespace {

// Minimiser of (u - u0)^2 + w_a |u - k_a| + w_b |u - k_b| for w_a, w_b >= 0.
// The map u0 -> u is monotone and piecewise linear: it slides with slope 1
// outside the kinks and sticks on each kink over an interval of width equal
// to that kink's weight.
inline double two_kink_prox(double u0, double k_a, double w_a, double k_b, double w_b) {
  double k_lo = k_a, w_lo = w_a, k_hi = k_b, w_hi = w_b;
  if (k_lo > k_hi) {
    std::swap(k_lo, k_hi);
    std::swap(w_lo, w_hi);
  }
  const double half_sum = 0.5 * (w_lo + w_hi);
  const double half_diff = 0.5 * (w_lo - w_hi);
  if (u0 > k_hi + half_sum) return u0 - half_sum;
  if (u0 >= k_hi + half_diff) return k_hi;
  if (u0 > k_lo + half_diff) return u0 - half_diff;
  if (u0 >= k_lo - half_sum) return k_lo;
  return u0 + half_sum;
}

// Displacement from the centre for every free coordinate at constraint multiplier `mu`.
// Returns the l1 norm of the displacement.
double displacement(Eigen::Ref<Eigen::VectorXd> u, const Eigen::Ref<const Eigen::VectorXd>& gbar,
                    const Eigen::Ref<const Eigen::VectorXd>& center, double coef, double lambda, double mu,
                    std::optional<Index> pinned) {
  // Per coordinate: coef*u^2 + g*u + lambda*|u + c| + mu*|u|; divide by coef.
  const double w_lambda = lambda / coef;
  const double w_mu = mu / coef;
  double norm = 0.0;
  const Index p = u.size();
  for (Index k = 0; k < p; ++k) {
    if (pinned && k == *pinned) {
      u[k] = 0.0;
      continue;
    }
    const double u0 = -gbar[k] / (2.0 * coef);
    u[k] = two_kink_prox(u0, -center[k], w_lambda, 0.0, w_mu);
    norm += std::abs(u[k]);
  }
  return norm;
}

}  // namespace

void prox_step_into(Eigen::Ref<Eigen::VectorXd> out, const Eigen::Ref<const Eigen::VectorXd>& dual_sum,
                    const Eigen::Ref<const Eigen::VectorXd>& center, double radius, double lambda,
                    Index step_count, double strength, std::optional<Index> pinned) {
  if (!(radius > 0.0)) throw ConfigError("prox_step: radius must be positive");
  if (!(lambda >= 0.0)) throw ConfigError("prox_step: lambda must be non-negative");
  if (!(strength > 0.0)) throw ConfigError("prox_step: strength must be positive");
  if (step_count < 1) throw ContractViolation("prox_step: step_count must be >= 1");
  const Index p = center.size();
  if (dual_sum.size() != p || out.size() != p) throw ContractViolation("prox_step: dimension mismatch");
  if (pinned && (*pinned < 0 || *pinned >= p)) throw ContractViolation("prox_step: pinned index out of range");

  const double t = static_cast<double>(step_count);
  const double coef = strength / std::sqrt(t);
  const Eigen::VectorXd gbar = dual_sum / t;

  double norm = displacement(out, gbar, center, coef, lambda, 0.0, pinned);
  if (norm > radius) {
    // At mu >= max|g| + lambda every free coordinate sticks to the centre.
    double lo = 0.0;
    double hi = lambda;
    for (Index k = 0; k < p; ++k) {
      if (!(pinned && k == *pinned)) hi = std::max(hi, std::abs(gbar[k]) + lambda);
    }
    hi = 2.0 * hi + 1.0;
    double norm_lo = norm;
    double norm_hi = 0.0;
    // l1 distance is continuous, piecewise linear and non-increasing in mu, so
    // regula falsi with the Illinois modification converges quickly; plain
    // bisection steps are interleaved to guarantee the bracket keeps shrinking.
    int side = 0;
    for (int iter = 0; iter < 200; ++iter) {
      double mid;
      if (iter % 3 == 2 || norm_lo == norm_hi) {
        mid = 0.5 * (lo + hi);
      } else {
        mid = lo + (norm_lo - radius) * (hi - lo) / (norm_lo - norm_hi);
      }
      if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
      const double n_mid = displacement(out, gbar, center, coef, lambda, mid, pinned);
      if (n_mid > radius) {
        lo = mid;
        norm_lo = n_mid;
        if (side == -1) norm_hi = radius + 0.5 * (norm_hi - radius);
        side = -1;
      } else {
        hi = mid;
        norm_hi = n_mid;
        if (side == 1) norm_lo = radius + 0.5 * (norm_lo - radius);
        side = 1;
        if (radius - n_mid <= 1e-13 * radius) break;
      }
      if (hi - lo <= 1e-15 * hi) break;
    }
    // Finish on the feasible side of the bracket.
    displacement(out, gbar, center, coef, lambda, hi, pinned);
  }
  out += center;
  if (pinned) out[*pinned] = center[*pinned];
}

Eigen::VectorXd prox_step(const Eigen::Ref<const Eigen::VectorXd>& dual_sum,
                          const Eigen::Ref<const Eigen::VectorXd>& center, double radius, double lambda,
                          Index step_count, double strength, std::optional<Index> pinned) {
  Eigen::VectorXd out(center.size());
  prox_step_into(out, dual_sum, center, radius, lambda, step_count, strength, pinned);
  return out;
}

}  // namespace adl
