#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riskg/channel_model.hpp"

namespace riskg {

enum class Preset {
  Paper,  // 1000 trials, full array sizes
  Desk,   // 50 trials, RIS size capped
};

Preset parse_preset(const std::string& s);
std::string to_string(Preset p);

// Everything a run needs: the scenario plus the sweep definition.
struct ExperimentConfig {
  std::string experiment;  // convergence, kgr_vs_power, kgr_vs_N, kgr_vs_M, kgr_vs_eve_radius, bdr_vs_power, timing
  ScenarioConfig scenario;
  std::vector<double> sweep;
  int trials = 50;
  Preset preset = Preset::Desk;
  double eps0 = 1e-4;
  int max_outer = 200;
  bool random_init = false;
  int probes = 10000;  // bdr_vs_power only
};

const std::vector<std::string>& experiment_names();

double dbm_to_watts(double dbm);
double db_to_linear(double db);

// Flat YAML keys; see configs/ for the documented set. Throws ConfigError on
// unknown keys, bad types, or invalid values.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& yaml_text);

// Canonical text form (fixed key order, full precision); hashed into the manifest.
std::string canonical_dump(const ExperimentConfig& cfg);

// Applies the preset's trial count and size cap. `trials_override` > 0 wins.
void apply_preset(ExperimentConfig& cfg, Preset preset, int trials_override = 0);

}  // namespace riskg
