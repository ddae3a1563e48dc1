// adl: streaming debiased lasso for GLMs.
//
//   adl fit --input data.csv --j 3 --j 7 --emit-every 50
//   adl simulate --replications 500 --sigma2 0.1 --output table.csv
//   adl schedule --p 500
//
// Every long option may also come from a key=value file given by --config;
// command-line flags take precedence.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "adl/io.hpp"
#include "commands.hpp"

namespace {

using adl::Index;
using adl::cli::EngineSettings;

void add_schedule_options(CLI::App& app, adl::ScheduleSpec& spec, const std::string& prefix) {
  app.add_option("--" + prefix + "T1", spec.first_length, "First epoch length (0 = max(8, ceil(c_T log p)))");
  app.add_option("--" + prefix + "length-log-factor", spec.length_log_factor, "c_T in the default first length");
  app.add_option("--" + prefix + "growth", spec.growth, "Epoch length growth factor (>= 1)");
  app.add_option("--" + prefix + "lambda1", spec.lambda1, "First-epoch penalty (< 0 = scale * sqrt(log p / T1))");
  app.add_option("--" + prefix + "lambda-scale", spec.lambda_scale, "Scale of the default first-epoch penalty");
  app.add_option("--" + prefix + "R1", spec.radius1, "First-epoch trust-region radius");
  app.add_option("--" + prefix + "decay", spec.decay, "Per-epoch decay of penalty and radius, in (0, 1)");
  app.add_option("--" + prefix + "epochs", spec.epochs, "Number of configured epochs");
}

void add_engine_options(CLI::App& app, EngineSettings& s) {
  app.add_option("--family", s.family, "GLM family")->check(CLI::IsMember({"logistic", "gaussian"}));
  app.add_option("--alpha", s.alpha, "Significance level of the intervals");
  add_schedule_options(app, s.lasso, "");
  add_schedule_options(app, s.nodewise, "nodewise-");
  app.add_option("--prox-strength", s.prox_strength, "Lasso prox strength");
  app.add_option("--nodewise-prox-strength", s.nodewise_prox_strength, "Nodewise prox strength");
  app.add_option("--scaling", s.scaling, "Prox/penalty scaling")->check(CLI::IsMember({"adaptive", "fixed"}));
  app.add_option("--epoch-output", s.epoch_output, "Epoch output")->check(CLI::IsMember({"average", "last"}));
  app.add_option("--nodewise-penalty", s.nodewise_penalty, "Nodewise l1 handling")
      ->check(CLI::IsMember({"prox", "subgradient"}));
}

// Values from the key=value file fill every option not given on the command line.
void apply_config(CLI::App& app, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw adl::ConfigError("cannot open config file '" + path + "'");
  for (const auto& [key, value] : adl::parse_key_values(in)) {
    CLI::Option* opt = app.get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") throw adl::ConfigError("unknown config key '" + key + "'");
    if (opt->count() > 0) continue;
    try {
      opt->add_result(value);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw adl::ConfigError("config key '" + key + "': " + e.what());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming adaptive debiased lasso for GLMs"};
  app.require_subcommand(1);

  adl::cli::FitSettings fit;
  std::string fit_config;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Stream a data file and emit estimates as JSON lines");
  fit_cmd->add_option("--config", fit_config, "key=value config file");
  add_engine_options(*fit_cmd, fit.engine);
  fit_cmd->add_option("--input", fit.input, "CSV (header, y first) or libsvm file; - for stdin");
  fit_cmd->add_option("--output", fit.output, "JSON-lines output; - for stdout");
  fit_cmd->add_flag("--libsvm", fit.libsvm, "Input is sparse libsvm text");
  fit_cmd->add_option("--p", fit.p, "Dimension (required with --libsvm)");
  fit_cmd->add_option("--j", fit.targets, "0-based feature index to track (repeatable)")->delimiter(',');
  fit_cmd->add_option("--emit-every", fit.emit_every, "Emission cadence in observations");

  adl::cli::SimulateSettings sim;
  std::string sim_config;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Run the AR(1) replication study");
  sim_cmd->add_option("--config", sim_config, "key=value config file");
  add_engine_options(*sim_cmd, sim.engine);
  sim_cmd->add_option("--n", sim.sim.n, "Stream length");
  sim_cmd->add_option("--p", sim.sim.p, "Dimension");
  sim_cmd->add_option("--s0", sim.sim.s0, "Number of nonzero coefficients (even)");
  sim_cmd->add_option("--rho", sim.sim.rho, "AR(1) correlation");
  sim_cmd->add_option("--sigma2", sim.sim.sigma2, "Marginal variance of the covariates");
  sim_cmd->add_option("--replications", sim.sim.replications, "Number of replications");
  sim_cmd->add_option("--seed", sim.sim.seed, "Random seed");
  sim_cmd->add_option("--per-category", sim.sim.per_category, "Tracked coordinates per truth category");
  sim_cmd->add_option("--checkpoints", sim.sim.checkpoints, "Checkpoints m (comma separated)")->delimiter(',');
  sim_cmd->add_option("--threads", sim.sim.threads, "Worker threads");
  sim_cmd->add_option("--output", sim.output, "Aggregated CSV; - for stdout");
  sim_cmd->add_option("--trace", sim.trace, "Per-step JSON-lines trace file");
  sim_cmd->add_option("--trace-replications", sim.trace_replications, "Replications included in the trace");

  adl::cli::ScheduleSettings sched;
  std::string sched_config;
  CLI::App* sched_cmd = app.add_subcommand("schedule", "Print the resolved epoch schedules and n_l");
  sched_cmd->add_option("--config", sched_config, "key=value config file");
  add_engine_options(*sched_cmd, sched.engine);
  sched_cmd->add_option("--p", sched.p, "Dimension");
  sched_cmd->add_option("--show-epochs", sched.shown_epochs, "Epochs to print per schedule");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : adl::cli::config_error;
  }

  try {
    if (*fit_cmd) {
      apply_config(*fit_cmd, fit_config);
      return adl::cli::run_fit(fit, std::cerr);
    }
    if (*sim_cmd) {
      apply_config(*sim_cmd, sim_config);
      return adl::cli::run_simulate(sim, std::cerr);
    }
    apply_config(*sched_cmd, sched_config);
    return adl::cli::run_schedule(sched, std::cout);
  } catch (const adl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return adl::cli::config_error;
  } catch (const adl::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return adl::cli::data_error;
  } catch (const adl::DegenerateInformation& e) {
    std::cerr << "degenerate: " << e.what() << '\n';
    return adl::cli::degenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return adl::cli::failure;
  }
}
