// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
// if any of them fails.

#include <sys/resource.h>
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "adl/debias.hpp"
#include "adl/engine.hpp"
#include "adl/simulate.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace adl;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("criterion %d %-28s %s  %s\n", id, name.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const StudyRow& row(const std::vector<StudyRow>& rows, Category c, Index m) {
  for (const auto& r : rows)
    if (r.category == c && r.m == m) return r;
  throw std::runtime_error("missing study row");
}

constexpr Category kCategories[] = {Category::zero, Category::positive, Category::negative};

struct Study {
  std::vector<StudyRow> rows;
  double plugin_coverage[3] = {0, 0, 0};
  double mean_seconds = 0.0;
};

// Runs the replications serially and evaluates the first-order plug-in
// estimate alongside the full estimator at the final checkpoint.
Study run_setting(double sigma2) {
  SimConfig config;
  config.sigma2 = sigma2;
  config.validate();
  Study study;
  Index plugin_hits[3] = {0, 0, 0}, plugin_total[3] = {0, 0, 0};
  const double z = normal_quantile(1.0 - config.alpha / 2.0);
  std::vector<ReplicationResult> reps;
  const auto t0 = std::chrono::steady_clock::now();
  for (Index r = 0; r < config.replications; ++r) {
    auto hook = [&](Index m, const AdlEngine& engine, const std::vector<TrackedIndex>& tracked) {
      if (m != config.n) return;
      for (std::size_t q = 0; q < tracked.size(); ++q) {
        const SummaryStats& s = engine.stats(q);
        if (s.a4() == 0.0) continue;
        const double point =
            oracle::plugin_point(s, engine.lasso().current_estimate(), engine.nodewise(q).current_estimate());
        const double se = std::sqrt(s.a5()) / std::abs(s.a4());
        const auto c = static_cast<int>(tracked[q].category);
        ++plugin_total[c];
        if (std::abs(point - tracked[q].truth) <= z * se) ++plugin_hits[c];
      }
    };
    reps.push_back(run_replication(config, r, hook));
  }
  study.mean_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / config.replications;
  study.rows = aggregate(config, reps);
  for (int c = 0; c < 3; ++c)
    study.plugin_coverage[c] = plugin_total[c] ? double(plugin_hits[c]) / plugin_total[c] : std::nan("");
  return study;
}

void print_table(const char* title, const Study& s) {
  std::printf("# %s (mean %.3f s per replication)\n", title, s.mean_seconds);
  std::printf("#   cat    m   coverage  length    z_mean   z_sd    plug-in coverage at n\n");
  for (Category c : kCategories)
    for (Index m : {80, 140, 200}) {
      const auto& r = row(s.rows, c, m);
      std::printf("#   %-3s %4lld   %.3f   %8.3f  %+.3f   %.3f", category_label(c), static_cast<long long>(m),
                  r.coverage, r.ci_length, r.z_mean, r.z_sd);
      if (m == 200) std::printf("   %.3f", s.plugin_coverage[static_cast<int>(c)]);
      std::printf("\n");
    }
}

void coverage_criterion(int id, const char* name, const Study& s, const double (&target)[3]) {
  bool point_match = true, fallback = true;
  std::string detail;
  for (int c = 0; c < 3; ++c) {
    const double cov = row(s.rows, kCategories[c], 200).coverage;
    point_match = point_match && std::abs(cov - target[c]) <= 0.03;
    fallback = fallback && cov >= 0.92 && cov <= 0.98;
    detail += fmt("%s=%.3f(target %.3f) ", category_label(kCategories[c]), cov, target[c]);
  }
  // The fallback bar only counts if the plug-in estimate falls outside it
  // on some signal category.
  bool ablation_fails = false;
  for (int c = 1; c < 3; ++c) {
    const double cov = s.plugin_coverage[c];
    ablation_fails = ablation_fails || !(cov >= 0.92 && cov <= 0.98);
  }
  detail += fmt("plug-in +1=%.3f -1=%.3f; ", s.plugin_coverage[1], s.plugin_coverage[2]);
  if (point_match)
    detail += "within 0.03 of targets";
  else if (!fallback)
    detail += "outside the fallback bar";
  else
    detail += ablation_fails ? "fallback bar [0.92, 0.98], plug-in rejected" : "fallback bar met but plug-in also meets it";
  report(id, name, point_match || (fallback && ablation_fails), detail);
}

int run_shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void criterion5() {
  SimConfig config;
  config.n = 1000;
  config.p = 20000;
  config.s0 = 20;
  config.replications = 1;
  config.validate();
  const double p = static_cast<double>(config.p);

  const auto t0 = std::chrono::steady_clock::now();
  const ReplicationResult result = run_replication(config, 0);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  // State for one tracked coordinate: the shared lasso plus its own nodewise
  // path and accumulators.
  const AdlEngine single(config.p, GlmFamily(config.family), {0}, config.engine);
  const Index lasso = single.lasso().footprint_scalars();
  const Index per_target = single.footprint_scalars() - lasso;
  const auto tracked = static_cast<Index>(result.records.size() / config.checkpoints.size());
  const bool additive = result.footprint_scalars == lasso + tracked * per_target;
  const double single_ratio = static_cast<double>(single.footprint_scalars()) / p;

  long rss_kb = 0;
  bool cli_ok = true;
#ifdef ADL_CLI_PATH
  const fs::path out = fs::temp_directory_path() / "adl_acceptance_memory.csv";
  cli_ok = run_shell(std::string(ADL_CLI_PATH) + " simulate --replications 1 --n 1000 --p 20000 --s0 20 --output " +
                     out.string() + " 2>/dev/null") == 0;
  rusage usage{};
  getrusage(RUSAGE_CHILDREN, &usage);
  rss_kb = usage.ru_maxrss;
#endif
  {
    rusage self{};
    getrusage(RUSAGE_SELF, &self);
    rss_kb = std::max(rss_kb, self.ru_maxrss);
  }
  const double rss_gb = rss_kb / (1024.0 * 1024.0);

  const bool pass = single_ratio <= 20.0 && additive && cli_ok && rss_gb < 2.0 && seconds <= 600.0;
  report(5, "O(p) memory", pass,
         fmt("one coordinate %.2fp scalars, %lld tracked %.2fp (lasso %.2fp + %.2fp each), peak RSS %.3f GB, %.2f s",
             single_ratio, static_cast<long long>(tracked), result.footprint_scalars / p, lasso / p, per_target / p,
             rss_gb, seconds));
}

void criterion6() {
  const GlmFamily logistic(FamilyKind::logistic);
  const auto d = testing::make_dataset(200, 50, 6, 0.5, 1.0, FamilyKind::logistic, 606);
  const Index j = 4;
  AdlEngine engine(50, logistic, {j});
  const auto t = testing::stream_with_transcript(engine, d, 0);
  const auto batch = oracle::batch_summary_stats(t, j, engine.schedules().start_index, logistic);
  const SummaryStats& s = engine.stats(0);
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
  double worst = 0.0;
  for (Index k = 0; k < 50; ++k) {
    worst = std::max(worst, rel(s.a1()[k], batch.a1[k]));
    worst = std::max(worst, rel(s.a2()[k], batch.a2[k]));
  }
  worst = std::max({worst, rel(s.a3(), batch.a3), rel(s.a4(), batch.a4), rel(s.a5(), batch.a5)});
  const bool bitwise = s.a4() == s.a2()[j];
  report(6, "streaming = batch stats", worst <= 1e-10 && bitwise && s.count() > 0,
         fmt("max relative error %.2e over %lld rows, a4 %s a2[j]", worst, static_cast<long long>(s.count()),
             bitwise ? "==" : "!="));
}

// Agreement count over 20 seeds for one engine configuration.
int offline_agreement(const EngineOptions& options, double& worst) {
  const GlmFamily gaussian(FamilyKind::gaussian);
  const Index n = 300, p = 10, j = 0;
  const Eigen::MatrixXd sigma = oracle::ar1_covariance(p, 0.5, 1.0);
  const Eigen::VectorXd gamma = oracle::population_nodewise(sigma, j);
  int close = 0;
  worst = 0.0;
  for (int seed = 1; seed <= 20; ++seed) {
    const auto d = testing::make_dataset(n, p, 2, 0.5, 1.0, FamilyKind::gaussian, 700 + seed);
    AdlEngine engine(p, gaussian, {j}, options);
    for (Index i = 0; i < n; ++i) engine.observe(d.X.row(i).transpose(), d.y[i]);
    const double online = engine.estimate(0).point;
    const double lambda = std::sqrt(std::log(static_cast<double>(p)) / n);
    const Eigen::VectorXd beta = oracle::batch_lasso(d.X, d.y, lambda, gaussian);
    const double offline = oracle::offline_debias(d.X, d.y, beta, gamma, j, gaussian);
    const double gap = std::abs(online - offline);
    worst = std::max(worst, gap);
    if (gap <= 0.1) ++close;
  }
  return close;
}

void criterion7() {
  // With n = 30p the lasso path wants the larger prox strength; the
  // study defaults are tuned for p >> n.
  EngineOptions low_dim;
  low_dim.lasso.prox_strength = 1.5;
  double worst = 0.0, worst_default = 0.0;
  const int close = offline_agreement(low_dim, worst);
  const int close_default = offline_agreement(EngineOptions{}, worst_default);
  report(7, "offline agreement", close >= 18,
         fmt("%d/20 seeds within 0.1, largest gap %.4f (lasso prox strength 1.5; study defaults: %d/20, %.4f)", close,
             worst, close_default, worst_default));
}

void criterion8() {
  int certified = 0, total = 0;
  double worst = 0.0;
  for (FamilyKind kind : {FamilyKind::gaussian, FamilyKind::logistic}) {
    const GlmFamily family(kind);
    for (int k = 0; k < 10; ++k) {
      const auto d = testing::make_dataset(60 + 10 * k, 8 + 2 * k, 2, 0.4, 1.0, kind, 800 + k);
      const double lambda = 0.05 + 0.02 * k;
      const Eigen::VectorXd b = oracle::batch_lasso(d.X, d.y, lambda, family);
      const Eigen::VectorXd g = oracle::loss_gradient(d.X, d.y, b, family);
      double violation = 0.0;
      for (Index c = 0; c < b.size(); ++c) {
        if (b[c] != 0.0)
          violation = std::max(violation, std::abs(g[c] + lambda * (b[c] > 0 ? 1.0 : -1.0)));
        else
          violation = std::max(violation, std::abs(g[c]) - lambda);
      }
      worst = std::max(worst, violation);
      ++total;
      if (violation <= 1e-6) ++certified;
    }
  }
  report(8, "batch lasso KKT", certified == total,
         fmt("%d/%d instances certified, worst violation %.2e", certified, total, worst));
}

void criterion9() {
#ifdef ADL_CLI_PATH
  const fs::path dir = fs::temp_directory_path() / "adl_acceptance_det";
  fs::create_directories(dir);
  const auto d = testing::make_dataset(300, 40, 4, 0.5, 1.0, FamilyKind::logistic, 909);
  {
    std::ofstream csv(dir / "data.csv", std::ios::binary);
    csv << "y";
    for (Index k = 0; k < 40; ++k) csv << ",x" << k;
    csv << '\n';
    csv.precision(17);
    for (Index i = 0; i < 300; ++i) {
      csv << d.y[i];
      for (Index k = 0; k < 40; ++k) csv << ',' << d.X(i, k);
      csv << '\n';
    }
  }
  const std::string cli = ADL_CLI_PATH;
  bool ok = true;
  for (int run = 1; run <= 2; ++run) {
    const std::string tag = std::to_string(run);
    ok = ok && run_shell(cli + " fit --input " + (dir / "data.csv").string() + " --j 0,3,7 --emit-every 5 --output " +
                         (dir / ("fit" + tag + ".jsonl")).string() + " 2> " + (dir / ("fit" + tag + ".err")).string()) == 0;
    ok = ok && run_shell(cli + " simulate --replications 6 --p 80 --seed 31 --output " +
                         (dir / ("sim" + tag + ".csv")).string() + " --trace " +
                         (dir / ("trace" + tag + ".csv")).string() + " 2>/dev/null") == 0;
  }
  const bool fit_same = slurp(dir / "fit1.jsonl") == slurp(dir / "fit2.jsonl") &&
                        slurp(dir / "fit1.err") == slurp(dir / "fit2.err") && !slurp(dir / "fit1.jsonl").empty();
  const bool sim_same = slurp(dir / "sim1.csv") == slurp(dir / "sim2.csv") &&
                        slurp(dir / "trace1.csv") == slurp(dir / "trace2.csv") && !slurp(dir / "sim1.csv").empty();
  report(9, "determinism", ok && fit_same && sim_same,
         fmt("fit %s, simulate %s", fit_same ? "byte-identical" : "differs", sim_same ? "byte-identical" : "differs"));
#else
  report(9, "determinism", false, "command-line tool not built");
#endif
}

}  // namespace

int main() {
  const Study table3 = run_setting(1.0);
  print_table("Sigma = AR(1) 0.5", table3);
  const Study table2 = run_setting(0.1);
  print_table("Sigma = 0.1 x AR(1) 0.5", table2);

  coverage_criterion(1, "coverage, unit covariance", table3, {0.960, 0.940, 0.944});
  coverage_criterion(2, "coverage, scaled covariance", table2, {0.960, 0.958, 0.965});

  bool shrinking = true;
  std::string lengths;
  for (const Study* s : {&table3, &table2})
    for (Category c : kCategories) {
      const double l80 = row(s->rows, c, 80).ci_length, l140 = row(s->rows, c, 140).ci_length,
                   l200 = row(s->rows, c, 200).ci_length;
      shrinking = shrinking && l80 > l140 && l140 > l200;
      lengths += fmt("%.2f>%.2f>%.2f ", l80, l140, l200);
    }
  report(3, "CI length shrinkage", shrinking, lengths);

  bool normal = true;
  std::string z;
  for (const Study* s : {&table3, &table2})
    for (Category c : kCategories) {
      const auto& r = row(s->rows, c, 200);
      normal = normal && r.z_sd >= 0.85 && r.z_sd <= 1.15 && std::abs(r.z_mean) <= 0.1;
      z += fmt("(%+.3f, %.3f) ", r.z_mean, r.z_sd);
    }
  report(4, "standardized errors", normal, "(mean, sd) per category and setting: " + z);

  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
