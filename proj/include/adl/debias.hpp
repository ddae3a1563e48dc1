#pragma once

#include <utility>

#include <Eigen/Core>

#include "adl/errors.hpp"
#include "adl/glm_family.hpp"

namespace adl {

/// Running sums behind the debiased estimate for one coordinate j.
///
/// Over observations i in (n_l, m], with w = phi''(x'b_i), g = x'c_i and
/// r = phi'(x'b_i) - y:
///
///     a1 = sum x r        a2 = sum g w x       a3 = sum g w x'b_i
///     a4 = sum g w x_j    a5 = sum g^2 r^2
///
/// a2..a5 use compensated summation. a2 and a4 share the same compensation
/// sequence, so a4 stays bitwise equal to a2[j].
class SummaryStats {
 public:
  SummaryStats(Index p, Index j, Index start_index);

  /// Folds observation `index` (must be last_index() + 1 and > n_l).
  /// `beta` and `gamma` are the held estimates at this index; gamma[j] must be -1.
  void update(const Eigen::Ref<const Eigen::VectorXd>& x, double y, const Eigen::Ref<const Eigen::VectorXd>& beta,
              const Eigen::Ref<const Eigen::VectorXd>& gamma, const GlmFamily& family, Index index);

  const Eigen::VectorXd& a1() const { return a1_; }
  const Eigen::VectorXd& a2() const { return a2_; }
  double a3() const { return a3_.sum; }
  double a4() const { return a4_.sum; }
  double a5() const { return a5_.sum; }

  Index dimension() const { return a1_.size(); }
  Index target() const { return target_; }
  Index start_index() const { return start_index_; }
  Index last_index() const { return last_index_; }
  Index count() const { return last_index_ - start_index_; }

  Index footprint_scalars() const { return a1_.size() + a2_.size() + a2_carry_.size() + 6; }

 private:
  struct Compensated {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v);
  };

  Index target_;
  Index start_index_;
  Index last_index_;
  Eigen::VectorXd a1_;
  Eigen::VectorXd a2_;
  Eigen::VectorXd a2_carry_;
  Compensated a3_;
  Compensated a4_;
  Compensated a5_;
};

/// Debiased point estimate, its standard error and a two-sided interval.
struct AdlEstimate {
  Index m = 0;
  Index j = 0;
  double point = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double alpha = 0.05;
};

/// b_j - (a1'c + a2'b - a3) / a4. Throws DegenerateInformation when a4 == 0.
double adl_point(const SummaryStats& stats, const Eigen::Ref<const Eigen::VectorXd>& beta_m,
                 const Eigen::Ref<const Eigen::VectorXd>& gamma_m);

/// sqrt(a5) / |a4|. Throws DegenerateInformation when a4 == 0.
double adl_stderr(const SummaryStats& stats);

/// point -/+ z_{alpha/2} * stderr. alpha must lie in (0, 1).
std::pair<double, double> confidence_interval(double point, double std_error, double alpha);

/// Inverse standard normal CDF. Throws DomainError unless 0 < q < 1.
double normal_quantile(double q);

/// All of the above at the current step of `stats`.
AdlEstimate adl_estimate(const SummaryStats& stats, const Eigen::Ref<const Eigen::VectorXd>& beta_m,
                         const Eigen::Ref<const Eigen::VectorXd>& gamma_m, double alpha);

}  // namespace adl
