#include "adl/engine.hpp"

#include <cmath>
#include <string>

namespace adl {

ScheduleSpec EngineOptions::default_nodewise_spec() {
  ScheduleSpec spec;
  spec.lambda_scale = 1.5;
  return spec;
}

namespace {

std::vector<Index> checked_targets(Index p, std::vector<Index> targets) {
  if (targets.empty()) throw ConfigError("at least one target index is required");
  for (Index j : targets) {
    if (j < 0 || j >= p) {
      throw ConfigError("target index " + std::to_string(j) + " outside [0, " + std::to_string(p) + ")");
    }
  }
  return targets;
}

}  // namespace

AdlEngine::AdlEngine(Index p, GlmFamily family, std::vector<Index> targets, EngineOptions options)
    : p_(p),
      family_(family),
      targets_(checked_targets(p, std::move(targets))),
      alpha_(options.alpha),
      schedules_(resolve_schedules(options.lasso_schedule, options.nodewise_schedule, p)),
      lasso_(p, schedules_.lasso, options.lasso) {
  if (!(alpha_ > 0.0 && alpha_ < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  nodewise_.reserve(targets_.size());
  stats_.reserve(targets_.size());
  for (Index j : targets_) {
    nodewise_.emplace_back(p, j, schedules_.nodewise, options.nodewise, options.nodewise_penalty);
    stats_.emplace_back(p, j, schedules_.start_index);
  }
}

Index AdlEngine::observe(const Eigen::Ref<const Eigen::VectorXd>& x, double y) {
  if (x.size() != p_) throw ContractViolation("observation has the wrong dimension");
  if (!std::isfinite(y) || !x.allFinite()) throw DataError("non-finite observation " + std::to_string(m_ + 1));
  const Index m = m_ + 1;

  lasso_.observe(x, y, family_);
  const Eigen::VectorXd& beta = lasso_.current_estimate();

  if (m == schedules_.n1) {
    for (auto& node : nodewise_) node.activate(beta);
  } else if (m > schedules_.n1) {
    for (auto& node : nodewise_) node.observe(x, beta, m, family_);
  }
  if (m > schedules_.start_index) {
    for (std::size_t q = 0; q < stats_.size(); ++q) {
      stats_[q].update(x, y, beta, nodewise_[q].current_estimate(), family_, m);
    }
  }
  m_ = m;
  return m;
}

bool AdlEngine::identifiable(std::size_t q) const { return stats_.at(q).a4() != 0.0; }

AdlEstimate AdlEngine::estimate(std::size_t q) const {
  if (m_ <= schedules_.start_index) {
    throw DegenerateInformation("no summary statistics before n_l = " + std::to_string(schedules_.start_index));
  }
  return adl_estimate(stats_.at(q), lasso_.current_estimate(), nodewise_.at(q).current_estimate(), alpha_);
}

std::optional<AdlEstimate> AdlEngine::try_estimate(std::size_t q) const {
  if (m_ <= schedules_.start_index || !identifiable(q)) return std::nullopt;
  return estimate(q);
}

Index AdlEngine::footprint_scalars() const {
  Index total = lasso_.footprint_scalars();
  for (const auto& node : nodewise_) total += node.footprint_scalars();
  for (const auto& s : stats_) total += s.footprint_scalars();
  return total;
}

}  // namespace adl
