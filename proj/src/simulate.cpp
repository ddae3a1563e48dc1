#include "adl/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>

namespace adl {

const char* category_label(Category c) {
  switch (c) {
    case Category::zero:
      return "0";
    case Category::positive:
      return "+1";
    case Category::negative:
      return "-1";
  }
  return "?";
}

void SimConfig::validate() const {
  if (n < 1) throw ConfigError("n must be at least 1");
  if (p < 1) throw ConfigError("p must be at least 1");
  if (s0 < 0 || s0 > p) throw ConfigError("s0 must lie in [0, p]");
  if (s0 % 2 != 0) throw ConfigError("s0 must be even");
  if (!(rho > -1.0 && rho < 1.0)) throw ConfigError("rho must lie in (-1, 1)");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw ConfigError("sigma2 must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (replications < 1) throw ConfigError("replications must be at least 1");
  if (per_category < 1) throw ConfigError("per-category count must be at least 1");
  if (checkpoints.empty()) throw ConfigError("at least one checkpoint is required");
  for (Index m : checkpoints) {
    if (m < 1 || m > n) throw ConfigError("checkpoint " + std::to_string(m) + " outside [1, n]");
  }
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) ||
      std::adjacent_find(checkpoints.begin(), checkpoints.end()) != checkpoints.end()) {
    throw ConfigError("checkpoints must be strictly increasing");
  }
}

void gen_ar1_row(double rho, double sigma2, RandomStream& rng, Eigen::Ref<Eigen::VectorXd> out) {
  const double sd = std::sqrt(sigma2);
  const double innovation = sd * std::sqrt(1.0 - rho * rho);
  const Index p = out.size();
  if (p == 0) return;
  out[0] = sd * rng.normal();
  for (Index k = 1; k < p; ++k) out[k] = rho * out[k - 1] + innovation * rng.normal();
}

Eigen::VectorXd gen_ar1_row(Index p, double rho, double sigma2, RandomStream& rng) {
  Eigen::VectorXd x(p);
  gen_ar1_row(rho, sigma2, rng, x);
  return x;
}

namespace {

// First k entries of a uniform random permutation of `pool` (partial Fisher-Yates).
void partial_shuffle(std::vector<Index>& pool, Index k, RandomStream& rng) {
  const auto n = static_cast<std::uint64_t>(pool.size());
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(k) && i < n; ++i) {
    const std::uint64_t pick = i + rng.below(n - i);
    std::swap(pool[i], pool[pick]);
  }
}

}  // namespace

Eigen::VectorXd make_beta_star(Index p, Index s0, RandomStream& rng) {
  if (p < 1) throw ConfigError("p must be at least 1");
  if (s0 < 0 || s0 > p) throw ConfigError("s0 must lie in [0, p]");
  if (s0 % 2 != 0) throw ConfigError("s0 must be even");
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  std::vector<Index> pool(static_cast<std::size_t>(p));
  std::iota(pool.begin(), pool.end(), Index{0});
  partial_shuffle(pool, s0, rng);
  for (Index k = 0; k < s0; ++k) beta[pool[static_cast<std::size_t>(k)]] = k < s0 / 2 ? 1.0 : -1.0;
  return beta;
}

double gen_response(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& beta_star,
                    const GlmFamily& family, RandomStream& rng) {
  const double eta = x.dot(beta_star);
  if (family.kind() == FamilyKind::logistic) return rng.uniform() < family.link_deriv(eta) ? 1.0 : 0.0;
  return eta + rng.normal();
}

std::vector<TrackedIndex> pick_tracked(const Eigen::VectorXd& beta_star, Index per_category, RandomStream& rng) {
  std::vector<TrackedIndex> out;
  for (Category c : {Category::zero, Category::positive, Category::negative}) {
    const double truth = c == Category::zero ? 0.0 : (c == Category::positive ? 1.0 : -1.0);
    std::vector<Index> pool;
    for (Index k = 0; k < beta_star.size(); ++k) {
      if (beta_star[k] == truth) pool.push_back(k);
    }
    const Index take = std::min<Index>(per_category, static_cast<Index>(pool.size()));
    partial_shuffle(pool, take, rng);
    for (Index k = 0; k < take; ++k) out.push_back({pool[static_cast<std::size_t>(k)], c, truth});
  }
  return out;
}

ReplicationResult run_replication(const SimConfig& config, Index replication, const CheckpointHook& on_checkpoint,
                                  const StepHook& on_step) {
  const auto started = std::chrono::steady_clock::now();
  RandomStream rng(config.seed, static_cast<std::uint64_t>(replication));
  const GlmFamily family(config.family);

  const Eigen::VectorXd beta_star = make_beta_star(config.p, config.s0, rng);
  const std::vector<TrackedIndex> tracked = pick_tracked(beta_star, config.per_category, rng);

  ReplicationResult result;
  result.replication = replication;
  if (tracked.empty()) return result;

  std::vector<Index> targets;
  for (const auto& t : tracked) targets.push_back(t.index);
  EngineOptions options = config.engine;
  options.alpha = config.alpha;
  AdlEngine engine(config.p, family, targets, options);

  Eigen::VectorXd x(config.p);
  auto next_checkpoint = config.checkpoints.begin();
  for (Index m = 1; m <= config.n; ++m) {
    gen_ar1_row(config.rho, config.sigma2, rng, x);
    const double y = gen_response(x, beta_star, family, rng);
    engine.observe(x, y);
    if (on_step && m > engine.schedules().start_index) on_step(engine, tracked);

    if (next_checkpoint == config.checkpoints.end() || *next_checkpoint != m) continue;
    ++next_checkpoint;
    for (std::size_t q = 0; q < tracked.size(); ++q) {
      CheckpointRecord rec;
      rec.m = m;
      rec.tracked = tracked[q];
      if (auto est = engine.try_estimate(q)) {
        rec.identifiable = true;
        rec.point = est->point;
        rec.std_error = est->std_error;
        rec.ci_low = est->ci_low;
        rec.ci_high = est->ci_high;
        rec.covered = est->ci_low <= tracked[q].truth && tracked[q].truth <= est->ci_high;
      }
      result.records.push_back(rec);
    }
    if (on_checkpoint) on_checkpoint(m, engine, tracked);
  }
  result.footprint_scalars = engine.footprint_scalars();
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

std::vector<StudyRow> aggregate(const SimConfig& config, const std::vector<ReplicationResult>& replications) {
  std::vector<StudyRow> rows;
  for (Category c : {Category::zero, Category::positive, Category::negative}) {
    for (Index m : config.checkpoints) {
      StudyRow row;
      row.category = c;
      row.m = m;
      double bias = 0.0, covered = 0.0, length = 0.0, z_sum = 0.0, z_sq = 0.0;
      Index z_count = 0;
      for (const auto& rep : replications) {
        for (const auto& rec : rep.records) {
          if (rec.m != m || rec.tracked.category != c) continue;
          if (!rec.identifiable) {
            ++row.degenerate;
            continue;
          }
          ++row.evaluated;
          bias += std::abs(rec.point - rec.tracked.truth);
          covered += rec.covered ? 1.0 : 0.0;
          length += rec.ci_high - rec.ci_low;
          if (rec.std_error > 0.0) {
            const double z = (rec.point - rec.tracked.truth) / rec.std_error;
            z_sum += z;
            z_sq += z * z;
            ++z_count;
          }
        }
      }
      const double nan = std::nan("");
      const auto denom = static_cast<double>(row.evaluated);
      row.abs_bias = row.evaluated ? bias / denom : nan;
      row.coverage = row.evaluated ? covered / denom : nan;
      row.ci_length = row.evaluated ? length / denom : nan;
      row.z_mean = z_count ? z_sum / static_cast<double>(z_count) : nan;
      row.z_sd = z_count > 1 ? std::sqrt(std::max(0.0, (z_sq - z_sum * row.z_mean) / static_cast<double>(z_count - 1)))
                             : nan;
      rows.push_back(row);
    }
  }
  return rows;
}

StudyResult run_study(const SimConfig& config) {
  config.validate();
  StudyResult study;
  study.replications.resize(static_cast<std::size_t>(config.replications));

  const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(config.replications)));
  if (threads == 1) {
    for (Index r = 0; r < config.replications; ++r) study.replications[static_cast<std::size_t>(r)] = run_replication(config, r);
  } else {
    std::atomic<Index> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (Index r = next++; r < config.replications && !failed; r = next++) {
          try {
            study.replications[static_cast<std::size_t>(r)] = run_replication(config, r);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  double wall = 0.0;
  for (const auto& rep : study.replications) {
    wall += rep.wall_seconds;
    study.max_footprint_scalars = std::max(study.max_footprint_scalars, rep.footprint_scalars);
  }
  study.mean_wall_seconds = wall / static_cast<double>(config.replications);
  study.rows = aggregate(config, study.replications);
  return study;
}

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void write_study_csv(std::ostream& out, const std::vector<StudyRow>& rows) {
  out << "category,m,evaluated,degenerate,abs_bias,coverage,ci_length,z_mean,z_sd\n";
  for (const auto& r : rows) {
    out << category_label(r.category) << ',' << r.m << ',' << r.evaluated << ',' << r.degenerate << ','
        << fmt(r.abs_bias) << ',' << fmt(r.coverage) << ',' << fmt(r.ci_length) << ',' << fmt(r.z_mean) << ','
        << fmt(r.z_sd) << '\n';
  }
}

}  // namespace adl
