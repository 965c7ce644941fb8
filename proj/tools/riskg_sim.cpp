#include <exception>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "riskg/config.hpp"
#include "riskg/experiments.hpp"
#include "riskg/types.hpp"

namespace {

struct RunFlags {
  std::string config;
  std::string out = "results";
  int trials = 0;
  long long seed = -1;
  std::string preset;
  int threads = 0;
};

int run(const std::string& experiment, const RunFlags& f) {
  riskg::ExperimentConfig cfg = riskg::load_config(f.config);
  if (!cfg.experiment.empty() && cfg.experiment != experiment) {
    throw riskg::ConfigError("config is for '" + cfg.experiment + "', not '" + experiment + "'");
  }
  cfg.experiment = experiment;
  if (!f.preset.empty()) {
    riskg::apply_preset(cfg, riskg::parse_preset(f.preset), f.trials);
  } else if (f.trials > 0) {
    cfg.trials = f.trials;
  }
  if (f.seed >= 0) cfg.scenario.seed = static_cast<std::uint64_t>(f.seed);

  const riskg::ExperimentResult res = riskg::run_experiment(cfg, f.threads);
  const auto files = riskg::write_outputs(cfg, res, f.out);
  std::cout << experiment << ": " << res.records.size() << " records, " << cfg.trials
            << " trials, config " << riskg::config_hash(cfg) << "\n";
  for (const auto& name : files) std::cout << "  " << f.out << "/" << name << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS-assisted secret key generation simulator"};
  app.set_version_flag("--version", riskg::library_version());
  app.require_subcommand(1);

  RunFlags flags;
  std::map<CLI::App*, std::string> subs;
  for (const std::string& name : riskg::experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", flags.config, "YAML config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "output directory")->capture_default_str();
    sub->add_option("--trials", flags.trials, "override the trial count")->check(CLI::PositiveNumber);
    sub->add_option("--seed", flags.seed, "override the master seed")->check(CLI::NonNegativeNumber);
    sub->add_option("--preset", flags.preset, "trial/size preset")->check(CLI::IsMember({"paper", "desk"}));
    sub->add_option("--threads", flags.threads, "worker threads (0 = all cores)");
    subs[sub] = name;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    for (const auto& [sub, name] : subs) {
      if (sub->parsed()) return run(name, flags);
    }
  } catch (const riskg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const riskg::SolverDivergence& e) {
    std::cerr << "solver diverged: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
