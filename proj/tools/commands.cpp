#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <memory>

#include <json.hpp>

#include "adl/io.hpp"

namespace adl::cli {

namespace {

using nlohmann::json;

template <class Enum>
Enum pick(const std::string& value, const char* what, std::initializer_list<std::pair<const char*, Enum>> choices) {
  for (const auto& [name, e] : choices) {
    if (value == name) return e;
  }
  throw ConfigError(std::string("unknown ") + what + " '" + value + "'");
}

// Owns a file stream unless the path is "-".
class Input {
 public:
  explicit Input(const std::string& path) {
    if (path == "-") return;
    file_ = std::make_unique<std::ifstream>(path);
    if (!*file_) throw ConfigError("cannot open input file '" + path + "'");
  }
  std::istream& get() { return file_ ? *file_ : std::cin; }

 private:
  std::unique_ptr<std::ifstream> file_;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path == "-" || path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

json estimate_record(Index m, Index j, const std::optional<AdlEstimate>& est) {
  json rec{{"m", m}, {"j", j}};
  if (est) {
    rec["point"] = est->point;
    rec["stderr"] = est->std_error;
    rec["ci_low"] = est->ci_low;
    rec["ci_high"] = est->ci_high;
  } else {
    rec["point"] = nullptr;
    rec["stderr"] = nullptr;
    rec["ci_low"] = nullptr;
    rec["ci_high"] = nullptr;
    rec["status"] = "not yet identifiable";
  }
  return rec;
}

}  // namespace

EngineOptions EngineSettings::resolve() const {
  GlmFamily::from_name(family);
  EngineOptions o;
  o.lasso_schedule = lasso;
  o.nodewise_schedule = nodewise;
  o.alpha = alpha;
  const auto scale = pick<StepScaling>(scaling, "scaling", {{"adaptive", StepScaling::adaptive}, {"fixed", StepScaling::fixed}});
  const auto output = pick<EpochOutput>(epoch_output, "epoch output",
                                        {{"average", EpochOutput::average}, {"last", EpochOutput::last_iterate}});
  o.lasso = {prox_strength, scale, output};
  o.nodewise = {nodewise_prox_strength, scale, output};
  o.nodewise_penalty = pick<NodewisePenalty>(
      nodewise_penalty, "nodewise penalty", {{"prox", NodewisePenalty::prox}, {"subgradient", NodewisePenalty::subgradient}});
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  return o;
}

bool emits_at(Index m, Index start_index, Index cadence) {
  return m >= start_index && (m - start_index) % cadence == 0;
}

int run_fit(const FitSettings& settings, std::ostream& log) {
  if (settings.targets.empty()) throw ConfigError("fit needs at least one --j");
  if (settings.emit_every < 1) throw ConfigError("emit-every must be at least 1");
  const GlmFamily family = GlmFamily::from_name(settings.engine.family);
  const EngineOptions options = settings.engine.resolve();
  if (settings.libsvm && settings.p < 1) throw ConfigError("--libsvm needs --p");
  // Validate schedules before touching the data when p is known up front.
  if (settings.libsvm) resolve_schedules(options.lasso_schedule, options.nodewise_schedule, settings.p);

  Input input(settings.input);
  std::unique_ptr<RowSource> rows;
  if (settings.libsvm) {
    rows = std::make_unique<LibsvmRowSource>(input.get(), settings.p);
  } else {
    rows = std::make_unique<CsvRowSource>(input.get());
  }
  const Index p = rows->dimension();
  AdlEngine engine(p, family, settings.targets, options);
  Output output(settings.output);
  std::ostream& out = output.get();
  const Index start = engine.schedules().start_index;

  Eigen::VectorXd x(p);
  double y = 0.0;
  while (rows->next(x, y)) {
    if (settings.libsvm && family.kind() == FamilyKind::logistic && y == -1.0) y = 0.0;
    Index m;
    try {
      m = engine.observe(x, y);
    } catch (const DataError& e) {
      throw DataError("row " + std::to_string(rows->rows_read()) + ": " + e.what());
    }
    if (!emits_at(m, start, settings.emit_every)) continue;
    for (std::size_t q = 0; q < engine.targets().size(); ++q) {
      const auto est = m > start ? engine.try_estimate(q) : std::nullopt;
      out << estimate_record(m, engine.targets()[q], est).dump() << '\n';
    }
  }
  out.flush();
  if (rows->rows_read() == 0) throw DataError("no data rows");

  int code = ok;
  const Index m = engine.observations_seen();
  for (std::size_t q = 0; q < engine.targets().size(); ++q) {
    const auto est = engine.try_estimate(q);
    if (!est) {
      log << "m=" << m << " j=" << engine.targets()[q] << ": not yet identifiable (n_l = " << start << ")\n";
      code = degenerate;
      continue;
    }
    log << "m=" << m << " j=" << est->j << ": point " << est->point << ", stderr " << est->std_error << ", "
        << 100.0 * (1.0 - est->alpha) << "% CI [" << est->ci_low << ", " << est->ci_high << "]\n";
  }
  return code;
}

int run_simulate(SimulateSettings settings, std::ostream& log) {
  settings.sim.family = GlmFamily::from_name(settings.engine.family).kind();
  settings.sim.alpha = settings.engine.alpha;
  settings.sim.engine = settings.engine.resolve();
  settings.sim.validate();

  if (!settings.trace.empty()) {
    Output trace(settings.trace);
    std::ostream& out = trace.get();
    for (Index r = 0; r < std::min(settings.trace_replications, settings.sim.replications); ++r) {
      run_replication(settings.sim, r, {}, [&](const AdlEngine& engine, const std::vector<TrackedIndex>& tracked) {
        for (std::size_t q = 0; q < tracked.size(); ++q) {
          json rec = estimate_record(engine.observations_seen(), tracked[q].index, engine.try_estimate(q));
          rec["replication"] = r;
          rec["category"] = category_label(tracked[q].category);
          rec["truth"] = tracked[q].truth;
          out << rec.dump() << '\n';
        }
      });
    }
  }

  const StudyResult study = run_study(settings.sim);
  Output output(settings.output);
  write_study_csv(output.get(), study.rows);
  log << "replications " << settings.sim.replications << ", mean wall time per replication "
      << study.mean_wall_seconds << " s, engine state " << study.max_footprint_scalars << " scalars ("
      << static_cast<double>(study.max_footprint_scalars) / static_cast<double>(settings.sim.p) << " p)\n";
  for (const auto& row : study.rows) {
    if (row.degenerate > 0) {
      log << "category " << category_label(row.category) << " m=" << row.m << ": " << row.degenerate
          << " degenerate estimates excluded\n";
    }
  }
  return ok;
}

int run_schedule(const ScheduleSettings& settings, std::ostream& out) {
  if (settings.p < 1) throw ConfigError("schedule needs --p");
  const EngineOptions options = settings.engine.resolve();
  const ResolvedSchedules r = resolve_schedules(options.lasso_schedule, options.nodewise_schedule, settings.p);
  out << describe(r, settings.shown_epochs);
  return ok;
}

}  // namespace adl::cli
