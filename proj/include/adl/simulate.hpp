#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "adl/engine.hpp"
#include "adl/glm_family.hpp"
#include "adl/rng.hpp"

namespace adl {

/// Truth categories of tracked coordinates: beta*_j = 0, +1, -1.
enum class Category { zero = 0, positive = 1, negative = 2 };

const char* category_label(Category c);

struct SimConfig {
  Index n = 200;
  Index p = 500;
  Index s0 = 6;
  double rho = 0.5;
  double sigma2 = 1.0;
  FamilyKind family = FamilyKind::logistic;
  Index replications = 500;
  std::uint64_t seed = 20240601;
  double alpha = 0.05;
  Index per_category = 3;
  std::vector<Index> checkpoints{80, 140, 200};
  EngineOptions engine{};
  unsigned threads = 1;

  /// Throws ConfigError on s0 odd or > p, |rho| >= 1, sigma2 <= 0,
  /// alpha outside (0, 1), or checkpoints outside [1, n].
  void validate() const;
};

/// x_1 = sd z_1, x_k = rho x_{k-1} + sd sqrt(1 - rho^2) z_k. Fills `out` in place.
void gen_ar1_row(double rho, double sigma2, RandomStream& rng, Eigen::Ref<Eigen::VectorXd> out);
Eigen::VectorXd gen_ar1_row(Index p, double rho, double sigma2, RandomStream& rng);

/// s0/2 random coordinates at +1 and s0/2 at -1. s0 must be even and <= p.
Eigen::VectorXd make_beta_star(Index p, Index s0, RandomStream& rng);

/// Bernoulli(sigmoid(x'b)) for logistic, x'b + N(0, 1) for gaussian.
double gen_response(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& beta_star,
                    const GlmFamily& family, RandomStream& rng);

struct TrackedIndex {
  Index index = 0;
  Category category = Category::zero;
  double truth = 0.0;
};

/// Up to `per_category` indices per category, sampled without replacement.
/// A category with fewer members contributes all of them (possibly none).
std::vector<TrackedIndex> pick_tracked(const Eigen::VectorXd& beta_star, Index per_category, RandomStream& rng);

struct CheckpointRecord {
  Index m = 0;
  TrackedIndex tracked;
  bool identifiable = false;
  double point = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool covered = false;
};

struct ReplicationResult {
  Index replication = 0;
  std::vector<CheckpointRecord> records;
  double wall_seconds = 0.0;
  Index footprint_scalars = 0;
};

/// Called after each checkpoint observation with the live engine.
using CheckpointHook = std::function<void(Index m, const AdlEngine&, const std::vector<TrackedIndex>&)>;
/// Called after every observation past n_l (per-step traces).
using StepHook = std::function<void(const AdlEngine&, const std::vector<TrackedIndex>&)>;

ReplicationResult run_replication(const SimConfig& config, Index replication, const CheckpointHook& on_checkpoint = {},
                                  const StepHook& on_step = {});

struct StudyRow {
  Category category = Category::zero;
  Index m = 0;
  Index evaluated = 0;   // estimates that existed
  Index degenerate = 0;  // a4 == 0 at the checkpoint
  double abs_bias = 0.0;
  double coverage = 0.0;
  double ci_length = 0.0;
  double z_mean = 0.0;
  double z_sd = 0.0;
};

struct StudyResult {
  std::vector<StudyRow> rows;  // category-major, checkpoints ascending
  std::vector<ReplicationResult> replications;
  double mean_wall_seconds = 0.0;
  Index max_footprint_scalars = 0;
};

/// Runs all replications (in parallel when config.threads > 1) and
/// aggregates them in replication order, so the table is thread-count invariant.
StudyResult run_study(const SimConfig& config);

/// Deterministic aggregate of finished replications.
std::vector<StudyRow> aggregate(const SimConfig& config, const std::vector<ReplicationResult>& replications);

/// One row per (category, checkpoint). Wall time is left out so that equal
/// seeds give byte-identical files.
void write_study_csv(std::ostream& out, const std::vector<StudyRow>& rows);

}  // namespace adl
