#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "adl/engine.hpp"
#include "adl/simulate.hpp"

namespace adl::cli {

/// Exit codes shared by all subcommands.
enum ExitCode : int { ok = 0, failure = 1, config_error = 2, data_error = 3, degenerate = 4 };

/// Schedule, optimiser and inference settings common to fit / simulate / schedule.
struct EngineSettings {
  std::string family = "logistic";
  double alpha = 0.05;
  ScheduleSpec lasso{};
  ScheduleSpec nodewise = EngineOptions::default_nodewise_spec();
  double prox_strength = EngineOptions{}.lasso.prox_strength;
  double nodewise_prox_strength = EngineOptions{}.nodewise.prox_strength;
  std::string scaling = "adaptive";
  std::string epoch_output = "average";
  std::string nodewise_penalty = "prox";

  EngineOptions resolve() const;
};

struct FitSettings {
  EngineSettings engine;
  std::string input = "-";
  std::string output = "-";
  bool libsvm = false;
  Index p = 0;  // required with libsvm
  std::vector<Index> targets;
  Index emit_every = 1;
};

struct SimulateSettings {
  EngineSettings engine;
  SimConfig sim;
  std::string output = "-";
  std::string trace;
  Index trace_replications = 1;
};

struct ScheduleSettings {
  EngineSettings engine;
  Index p = 0;
  Index shown_epochs = 8;
};

/// Streams rows, writes JSON lines, returns an exit code. Final estimates go to `log`.
int run_fit(const FitSettings& settings, std::ostream& log);
int run_simulate(SimulateSettings settings, std::ostream& log);
int run_schedule(const ScheduleSettings& settings, std::ostream& out);

/// Records are emitted at m = n_l, n_l + c, n_l + 2c, ... so a stream of
/// length n yields floor((n - n_l) / c) + 1 records per target.
bool emits_at(Index m, Index start_index, Index cadence);

}  // namespace adl::cli
