#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "riskg/config.hpp"

namespace riskg {

struct RunRecord {
  std::string experiment;
  double sweep_value = 0.0;
  int trial = 0;
  std::string method;
  double min_kgr = 0.0;  // bits per probing round
  int iterations = 0;
  double milliseconds = 0.0;  // timing experiment only; NaN elsewhere
  std::uint64_t seed = 0;
  // bdr_vs_power only; NaN elsewhere.
  double bdr = 0.0;
  double frequency_p = 0.0;
  double runs_p = 0.0;
};

struct TraceRecord {
  double sweep_value = 0.0;
  int trial = 0;
  int iteration = 0;
  double objective = 0.0;
};

struct ExperimentResult {
  std::vector<RunRecord> records;  // ordered by sweep value, trial, method
  std::vector<TraceRecord> traces; // convergence only
};

std::vector<std::string> experiment_methods(const std::string& experiment);

// Base scenario with the swept parameter set to `value`.
ScenarioConfig apply_sweep(const ScenarioConfig& base, const std::string& experiment, double value);

// Child stream for (seed, trial, stream); independent of execution order.
std::mt19937_64 child_rng(std::uint64_t seed, int trial, int stream);

// Runs every (sweep value, trial) pair on a worker pool. `threads` <= 0 uses the
// hardware concurrency.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads = 0);

// Writes <experiment>_<method>.csv for each method, <experiment>_trace.csv when
// traces exist, and manifest.yaml. Returns the written file names.
std::vector<std::string> write_outputs(const ExperimentConfig& cfg, const ExperimentResult& res,
                                       const std::string& out_dir);

std::string config_hash(const ExperimentConfig& cfg);
std::string library_version();

}  // namespace riskg
