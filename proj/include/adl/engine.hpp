#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "adl/debias.hpp"
#include "adl/glm_family.hpp"
#include "adl/nodewise.hpp"
#include "adl/radar.hpp"
#include "adl/schedule.hpp"

namespace adl {

struct EngineOptions {
  ScheduleSpec lasso_schedule{};
  ScheduleSpec nodewise_schedule = default_nodewise_spec();
  DualAveragingOptions lasso{.prox_strength = 0.5};
  DualAveragingOptions nodewise{.prox_strength = 2.0};
  NodewisePenalty nodewise_penalty = NodewisePenalty::prox;
  double alpha = 0.05;

  static ScheduleSpec default_nodewise_spec();
};

/// Streaming debiased lasso for a fixed set of target coordinates.
///
/// Each call to observe() runs one step of the online procedure: the lasso
/// update, the nodewise updates for every target, the held snapshots, then
/// the summary statistics. Nothing about past observations is retained
/// beyond O(p) state per target.
class AdlEngine {
 public:
  AdlEngine(Index p, GlmFamily family, std::vector<Index> targets, EngineOptions options = {});

  /// Consumes the next observation and returns its 1-based index m.
  Index observe(const Eigen::Ref<const Eigen::VectorXd>& x, double y);

  Index observations_seen() const { return m_; }
  Index dimension() const { return p_; }
  const GlmFamily& family() const { return family_; }
  const std::vector<Index>& targets() const { return targets_; }
  const ResolvedSchedules& schedules() const { return schedules_; }
  double alpha() const { return alpha_; }

  /// True once m > n_l and a4 != 0 for target slot q.
  bool identifiable(std::size_t q) const;
  /// Throws DegenerateInformation while the slot is not identifiable.
  AdlEstimate estimate(std::size_t q) const;
  std::optional<AdlEstimate> try_estimate(std::size_t q) const;

  const OnlineLasso& lasso() const { return lasso_; }
  const OnlineNodewise& nodewise(std::size_t q) const { return nodewise_.at(q); }
  const SummaryStats& stats(std::size_t q) const { return stats_.at(q); }

  /// Doubles held by the engine state (lasso, nodewise and summaries).
  Index footprint_scalars() const;

 private:
  Index p_;
  GlmFamily family_;
  std::vector<Index> targets_;
  double alpha_;
  ResolvedSchedules schedules_;
  OnlineLasso lasso_;
  std::vector<OnlineNodewise> nodewise_;
  std::vector<SummaryStats> stats_;
  Index m_ = 0;
};

}  // namespace adl
