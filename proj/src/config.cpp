#include "riskg/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace riskg {

Preset parse_preset(const std::string& s) {
  if (s == "paper") return Preset::Paper;
  if (s == "desk") return Preset::Desk;
  throw ConfigError("unknown preset '" + s + "' (expected paper or desk)");
}

std::string to_string(Preset p) { return p == Preset::Paper ? "paper" : "desk"; }

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"convergence", "kgr_vs_power", "kgr_vs_N",
                                                 "kgr_vs_M",    "kgr_vs_eve_radius",
                                                 "bdr_vs_power", "timing"};
  return names;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

namespace {

template <typename T>
T get(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception& e) {
    throw ConfigError("bad value for '" + key + "': " + e.what());
  }
}

Position get_position(const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence() || node.size() != 3) throw ConfigError("'" + key + "' must be [x, y, z]");
  return {get<double>(node[0], key), get<double>(node[1], key), get<double>(node[2], key)};
}

// Exactly one of the two spellings may be given.
bool pick(const YAML::Node& root, const std::string& a, const std::string& b, std::string& which) {
  const bool has_a = static_cast<bool>(root[a]);
  const bool has_b = static_cast<bool>(root[b]);
  if (has_a && has_b) throw ConfigError("give only one of '" + a + "' and '" + b + "'");
  which = has_a ? a : b;
  return has_a || has_b;
}

}  // namespace

ExperimentConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("config must be a mapping of flat keys");

  static const std::set<std::string> known = {
      "experiment", "sweep", "trials", "preset", "eps0", "max_outer", "random_init", "probes",
      "alice", "bob", "ris", "bs_horizontal", "bs_vertical", "ris_horizontal", "ris_vertical",
      "eve_antennas", "wavelength", "ris_spacing", "ris_spacing_wavelengths", "bs_correlation",
      "eve_radius", "pa_dbm", "pa_watts", "pb_dbm", "pb_watts", "noise_dbm", "noise_watts",
      "alpha_ab", "alpha_ar", "alpha_rb", "alpha_ea", "alpha_er", "zeta0", "zeta0_db",
      "path_loss_model", "seed"};
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }

  ExperimentConfig cfg;
  ScenarioConfig& s = cfg.scenario;
  if (root["experiment"]) cfg.experiment = get<std::string>(root["experiment"], "experiment");
  if (root["sweep"]) cfg.sweep = get<std::vector<double>>(root["sweep"], "sweep");
  if (root["trials"]) cfg.trials = get<int>(root["trials"], "trials");
  if (root["preset"]) cfg.preset = parse_preset(get<std::string>(root["preset"], "preset"));
  if (root["eps0"]) cfg.eps0 = get<double>(root["eps0"], "eps0");
  if (root["max_outer"]) cfg.max_outer = get<int>(root["max_outer"], "max_outer");
  if (root["random_init"]) cfg.random_init = get<bool>(root["random_init"], "random_init");
  if (root["probes"]) cfg.probes = get<int>(root["probes"], "probes");

  if (root["alice"]) s.alice = get_position(root["alice"], "alice");
  if (root["bob"]) s.bob = get_position(root["bob"], "bob");
  if (root["ris"]) s.ris = get_position(root["ris"], "ris");
  auto set_int = [&](const char* key, int& out) {
    if (root[key]) out = get<int>(root[key], key);
  };
  auto set_double = [&](const char* key, double& out) {
    if (root[key]) out = get<double>(root[key], key);
  };
  set_int("bs_horizontal", s.bs_horizontal);
  set_int("bs_vertical", s.bs_vertical);
  set_int("ris_horizontal", s.ris_horizontal);
  set_int("ris_vertical", s.ris_vertical);
  set_int("eve_antennas", s.eve_antennas);
  set_double("wavelength", s.wavelength);
  set_double("bs_correlation", s.bs_correlation);
  set_double("eve_radius", s.eve_radius);
  set_double("alpha_ab", s.alpha_ab);
  set_double("alpha_ar", s.alpha_ar);
  set_double("alpha_rb", s.alpha_rb);
  set_double("alpha_ea", s.alpha_ea);
  set_double("alpha_er", s.alpha_er);

  std::string which;
  if (pick(root, "ris_spacing", "ris_spacing_wavelengths", which)) {
    const double val = get<double>(root[which], which);
    s.ris_spacing = which == "ris_spacing" ? val : val * s.wavelength;
  }
  // dB / dBm inputs are converted here and nowhere else.
  if (pick(root, "pa_dbm", "pa_watts", which)) {
    const double val = get<double>(root[which], which);
    s.pa_watts = which == "pa_dbm" ? dbm_to_watts(val) : val;
  }
  if (pick(root, "pb_dbm", "pb_watts", which)) {
    const double val = get<double>(root[which], which);
    s.pb_watts = which == "pb_dbm" ? dbm_to_watts(val) : val;
  }
  if (pick(root, "noise_dbm", "noise_watts", which)) {
    const double val = get<double>(root[which], which);
    s.noise_watts = which == "noise_dbm" ? dbm_to_watts(val) : val;
  }
  if (pick(root, "zeta0_db", "zeta0", which)) {
    const double val = get<double>(root[which], which);
    s.zeta0 = which == "zeta0_db" ? db_to_linear(val) : val;
  }
  if (root["path_loss_model"]) {
    const auto m = get<std::string>(root["path_loss_model"], "path_loss_model");
    if (m == "sqrt_power") {
      s.path_loss_model = PathLossModel::SqrtPower;
    } else if (m == "power") {
      s.path_loss_model = PathLossModel::Power;
    } else {
      throw ConfigError("path_loss_model must be sqrt_power or power");
    }
  }
  if (root["seed"]) s.seed = get<std::uint64_t>(root["seed"], "seed");

  s.validate();
  if (!cfg.experiment.empty()) {
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), cfg.experiment) == names.end()) {
      throw ConfigError("unknown experiment '" + cfg.experiment + "'");
    }
  }
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (!(cfg.eps0 > 0.0)) throw ConfigError("eps0 must be positive");
  if (cfg.max_outer < 1) throw ConfigError("max_outer must be >= 1");
  if (cfg.probes < 100) throw ConfigError("probes must be >= 100");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string canonical_dump(const ExperimentConfig& cfg) {
  const ScenarioConfig& s = cfg.scenario;
  std::ostringstream o;
  o << std::setprecision(17);
  auto pos = [&](const char* k, const Position& p) {
    o << k << ": [" << p.x << ", " << p.y << ", " << p.z << "]\n";
  };
  o << "experiment: " << cfg.experiment << "\n";
  o << "sweep: [";
  for (std::size_t i = 0; i < cfg.sweep.size(); ++i) o << (i ? ", " : "") << cfg.sweep[i];
  o << "]\n";
  o << "trials: " << cfg.trials << "\npreset: " << to_string(cfg.preset) << "\neps0: " << cfg.eps0
    << "\nmax_outer: " << cfg.max_outer << "\nrandom_init: " << (cfg.random_init ? "true" : "false")
    << "\nprobes: " << cfg.probes << "\n";
  pos("alice", s.alice);
  pos("bob", s.bob);
  pos("ris", s.ris);
  o << "bs_horizontal: " << s.bs_horizontal << "\nbs_vertical: " << s.bs_vertical
    << "\nris_horizontal: " << s.ris_horizontal << "\nris_vertical: " << s.ris_vertical
    << "\neve_antennas: " << s.eve_antennas << "\nwavelength: " << s.wavelength
    << "\nris_spacing: " << s.ris_spacing << "\nbs_correlation: " << s.bs_correlation
    << "\neve_radius: " << s.eve_radius << "\npa_watts: " << s.pa_watts << "\npb_watts: " << s.pb_watts
    << "\nnoise_watts: " << s.noise_watts << "\nalpha_ab: " << s.alpha_ab << "\nalpha_ar: " << s.alpha_ar
    << "\nalpha_rb: " << s.alpha_rb << "\nalpha_ea: " << s.alpha_ea << "\nalpha_er: " << s.alpha_er
    << "\nzeta0: " << s.zeta0 << "\npath_loss_model: "
    << (s.path_loss_model == PathLossModel::SqrtPower ? "sqrt_power" : "power")
    << "\nseed: " << s.seed << "\n";
  return o.str();
}

void apply_preset(ExperimentConfig& cfg, Preset preset, int trials_override) {
  cfg.preset = preset;
  cfg.trials = preset == Preset::Paper ? 1000 : 50;
  if (preset == Preset::Desk) {
    // RIS size sweeps are capped at 40 elements; larger values are dropped.
    const bool n_sweep = cfg.experiment == "convergence" || cfg.experiment == "kgr_vs_N" ||
                         cfg.experiment == "timing";
    if (n_sweep) {
      std::vector<double> kept;
      for (double n : cfg.sweep) {
        if (n <= 40.0) kept.push_back(n);
      }
      if (kept.empty() && !cfg.sweep.empty()) kept.push_back(40.0);
      cfg.sweep = kept;
    }
    if (cfg.scenario.ris_elements() > 40) {
      cfg.scenario.ris_vertical = std::max(1, 40 / cfg.scenario.ris_horizontal);
    }
  }
  if (trials_override > 0) cfg.trials = trials_override;
}

}  // namespace riskg
