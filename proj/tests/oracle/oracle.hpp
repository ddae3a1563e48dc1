#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "adl/debias.hpp"
#include "adl/glm_family.hpp"

namespace adl::oracle {

/// Solver failed to converge, or a fixture is inconsistent.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Average negative log-likelihood F_n(b) = (1/n) sum [phi(x'b) - y x'b].
double loss(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& beta, const GlmFamily& family);
Eigen::VectorXd loss_gradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& beta,
                              const GlmFamily& family);
Eigen::MatrixXd loss_hessian(const Eigen::MatrixXd& X, const Eigen::VectorXd& beta, const GlmFamily& family);

/// argmin F_n(b) + lambda ||b||_1. Cyclic coordinate descent for gaussian,
/// proximal Newton with a coordinate-descent inner solver for logistic.
Eigen::VectorXd batch_lasso(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double lambda, const GlmFamily& family,
                            double tolerance = 1e-10, int max_sweeps = 100000);

/// b_j - c'grad F_n(b) / (c' H_n(b) e_j).
double offline_debias(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& beta_tilde,
                      const Eigen::VectorXd& gamma_tilde, Index j, const GlmFamily& family);

/// -Theta e_j / Theta_jj for Theta = Sigma^{-1}, so entry j is -1.
Eigen::VectorXd population_nodewise(const Eigen::MatrixXd& sigma, Index j);

/// sigma2 * rho^|i-k|.
Eigen::MatrixXd ar1_covariance(Index p, double rho, double sigma2);

struct TranscriptRecord {
  Index i = 0;
  double y = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd beta;
  Eigen::VectorXd gamma;
};

/// Rows (i, x_i, y_i, beta^(i), gamma^(i)) captured from a streaming run.
struct Transcript {
  std::vector<TranscriptRecord> records;

  /// Throws OracleError unless indices are strictly increasing without gaps.
  void check_contiguous() const;
};

/// Header: i,y,x0..x{p-1},beta0..,gamma0..
void write_transcript_csv(std::ostream& out, const Transcript& t);
Transcript read_transcript_csv(std::istream& in);

/// Direct sums of the five accumulators over records with i in (n_l, last].
/// Plain summation in record order.
struct BatchStats {
  Eigen::VectorXd a1, a2;
  double a3 = 0.0, a4 = 0.0, a5 = 0.0;
};
BatchStats batch_summary_stats(const Transcript& t, Index j, Index n_l, const GlmFamily& family);

/// Debiasing with only the first-order score term: b_j - a1'c / a4.
double plugin_debias_ablation(const Transcript& t, const Eigen::VectorXd& beta_m, const Eigen::VectorXd& gamma_m,
                              Index j, Index n_l, const GlmFamily& family);
/// Same estimate from streaming accumulators.
double plugin_point(const SummaryStats& stats, const Eigen::VectorXd& beta_m, const Eigen::VectorXd& gamma_m);

}  // namespace adl::oracle
