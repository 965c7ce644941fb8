#include "riskg/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "riskg/baselines.hpp"
#include "riskg/bsum.hpp"
#include "riskg/kgr.hpp"
#include "riskg/keygen.hpp"

#ifndef RISKG_VERSION
#define RISKG_VERSION "0.0.0"
#endif

namespace riskg {

std::string library_version() { return RISKG_VERSION; }

std::vector<std::string> experiment_methods(const std::string& experiment) {
  if (experiment == "convergence" || experiment == "timing") return {"bsum"};
  if (experiment == "kgr_vs_power" || experiment == "bdr_vs_power") {
    return {"bsum", "iid_design_at_ris", "iid_design_at_bs", "no_ris"};
  }
  if (experiment == "kgr_vs_N") return {"bsum", "iid_design_at_ris"};
  if (experiment == "kgr_vs_M") return {"bsum", "iid_design_at_bs"};
  if (experiment == "kgr_vs_eve_radius") return {"bsum", "iid_design_at_ris", "iid_design_at_bs"};
  throw ConfigError("unknown experiment '" + experiment + "'");
}

namespace {

int split_count(double total, int per_row, const char* what) {
  const long long t = std::llround(total);
  if (t < 1 || std::abs(total - static_cast<double>(t)) > 1e-9 || t % per_row != 0) {
    throw ConfigError(std::string(what) + " sweep value must be a positive multiple of the row size");
  }
  return static_cast<int>(t / per_row);
}

}  // namespace

ScenarioConfig apply_sweep(const ScenarioConfig& base, const std::string& experiment, double value) {
  ScenarioConfig s = base;
  if (experiment == "convergence" || experiment == "kgr_vs_N" || experiment == "timing") {
    s.ris_vertical = split_count(value, s.ris_horizontal, "RIS element");
  } else if (experiment == "kgr_vs_power" || experiment == "bdr_vs_power") {
    s.pa_watts = s.pb_watts = dbm_to_watts(value);
  } else if (experiment == "kgr_vs_M") {
    s.bs_vertical = split_count(value, s.bs_horizontal, "BS antenna");
  } else if (experiment == "kgr_vs_eve_radius") {
    s.eve_radius = value;
  } else {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  s.validate();
  return s;
}

std::mt19937_64 child_rng(std::uint64_t seed, int trial, int stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

namespace {

struct TrialOutput {
  std::vector<RunRecord> records;
  std::vector<TraceRecord> traces;
};

TrialOutput run_trial(const ExperimentConfig& cfg, double value, int trial) {
  const ScenarioConfig sc = apply_sweep(cfg.scenario, cfg.experiment, value);
  const std::uint64_t seed = sc.seed;
  std::mt19937_64 geo = child_rng(seed, trial, 0);
  const auto eves = place_eves(sc, geo);
  const CorrelationSet corr = build_correlation_set(sc, eves);
  const LiftedProblem lp = lift(corr, sc.pa_watts, sc.noise_watts);

  BsumOptions opts;
  opts.eps0 = cfg.eps0;
  opts.max_outer = cfg.max_outer;

  TrialOutput out;
  const auto methods = experiment_methods(cfg.experiment);
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    const std::string& m = methods[mi];
    std::mt19937_64 rng = child_rng(seed, trial, 1 + static_cast<int>(mi));
    RunRecord rec;
    rec.experiment = cfg.experiment;
    rec.sweep_value = value;
    rec.trial = trial;
    rec.method = m;
    rec.seed = seed;
    rec.milliseconds = rec.bdr = rec.frequency_p = rec.runs_p = std::numeric_limits<double>::quiet_NaN();

    VecC w;
    VecC v;
    const auto t0 = std::chrono::steady_clock::now();
    if (m == "no_ris") {
      w = eigen_beamforming(corr.rs, sc.pa_watts);
      v = VecC::Zero(corr.N);
    } else {
      RealPoint init = default_init(lp, corr.rs);
      BsumOptions o = opts;
      if (m == "bsum" && cfg.random_init) init = random_init(lp, rng);
      if (m == "iid_design_at_ris") {
        // R_I assumed identity: the reflection carries no design information.
        init.v = lift_vector(random_reflection(corr.N, rng));
        o.update_v = false;
      } else if (m == "iid_design_at_bs") {
        // R_S assumed identity: any full-power direction is as good as another.
        init.w = lift_vector(random_beamforming(corr.M, sc.pa_watts, rng));
        o.update_w = false;
      }
      const BsumResult r = bsum_solve(lp, init, o);
      rec.iterations = r.iterations;
      w = transmit_vector(r.point);
      v = reflection_vector(r.point);
      if (cfg.experiment == "convergence") {
        for (const BsumIteration& it : r.trace) {
          out.traces.push_back({value, trial, it.iteration, it.objective});
        }
      }
    }
    if (cfg.experiment == "timing") {
      rec.milliseconds =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
    rec.min_kgr = min_kgr(w, v, corr, sc.pb_watts, sc.noise_watts);

    if (cfg.experiment == "bdr_vs_power") {
      std::mt19937_64 probe_rng = child_rng(seed, trial, 100 + static_cast<int>(mi));
      const ProbeGains g = simulate_probes(w, v, corr, sc.pb_watts, sc.noise_watts, cfg.probes, probe_rng);
      const Bits ka = quantize_cdf_1bit(g.alice);
      const Bits kb = quantize_cdf_1bit(g.bob);
      rec.bdr = bdr(ka, kb);
      const RandomnessReport rr = randomness_tests(ka);
      rec.frequency_p = rr.frequency_p;
      rec.runs_p = rr.runs_p;
    }
    out.records.push_back(rec);
  }
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads) {
  experiment_methods(cfg.experiment);  // validates the name
  if (cfg.sweep.empty()) throw ConfigError("sweep must list at least one value");
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");

  const std::size_t n_tasks = cfg.sweep.size() * static_cast<std::size_t>(cfg.trials);
  std::vector<TrialOutput> slots(n_tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_tasks) return;
      {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (failure) return;
      }
      try {
        const std::size_t si = i / static_cast<std::size_t>(cfg.trials);
        const int trial = static_cast<int>(i % static_cast<std::size_t>(cfg.trials));
        slots[i] = run_trial(cfg, cfg.sweep[si], trial);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(n_tasks)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult res;
  for (auto& s : slots) {
    res.records.insert(res.records.end(), s.records.begin(), s.records.end());
    res.traces.insert(res.traces.end(), s.traces.begin(), s.traces.end());
  }
  return res;
}

std::string config_hash(const ExperimentConfig& cfg) {
  // FNV-1a 64; stable across platforms, unlike std::hash.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical_dump(cfg)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << h;
  return o.str();
}

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "";
  std::ostringstream o;
  o << std::setprecision(17) << x;
  return o.str();
}

void write_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << body;
  if (!f) throw std::runtime_error("write failed for " + p.string());
}

}  // namespace

std::vector<std::string> write_outputs(const ExperimentConfig& cfg, const ExperimentResult& res,
                                       const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out_dir + ": " + ec.message());

  std::vector<std::string> files;
  for (const std::string& m : experiment_methods(cfg.experiment)) {
    std::ostringstream o;
    o << "# riskg run records, schema v1\n";
    o << "experiment,sweep_value,trial,method,min_kgr,iterations,milliseconds,seed,bdr,frequency_p,runs_p\n";
    for (const RunRecord& r : res.records) {
      if (r.method != m) continue;
      o << r.experiment << ',' << num(r.sweep_value) << ',' << r.trial << ',' << r.method << ','
        << num(r.min_kgr) << ',' << r.iterations << ',' << num(r.milliseconds) << ',' << r.seed
        << ',' << num(r.bdr) << ',' << num(r.frequency_p) << ',' << num(r.runs_p) << '\n';
    }
    const std::string name = cfg.experiment + "_" + m + ".csv";
    write_file(fs::path(out_dir) / name, o.str());
    files.push_back(name);
  }
  if (!res.traces.empty()) {
    std::ostringstream o;
    o << "# riskg BSUM traces, schema v1\n";
    o << "sweep_value,trial,iteration,objective\n";
    for (const TraceRecord& t : res.traces) {
      o << num(t.sweep_value) << ',' << t.trial << ',' << t.iteration << ',' << num(t.objective) << '\n';
    }
    const std::string name = cfg.experiment + "_trace.csv";
    write_file(fs::path(out_dir) / name, o.str());
    files.push_back(name);
  }

  std::ostringstream m;
  m << "experiment: " << cfg.experiment << "\n";
  m << "library_version: " << library_version() << "\n";
  m << "seed: " << cfg.scenario.seed << "\n";
  m << "trials: " << cfg.trials << "\n";
  m << "preset: " << to_string(cfg.preset) << "\n";
  m << "config_hash: " << config_hash(cfg) << "\n";
  m << "files:\n";
  for (const auto& f : files) m << "  - " << f << "\n";
  m << "config:\n";
  std::istringstream dump(canonical_dump(cfg));
  for (std::string line; std::getline(dump, line);) m << "  " << line << "\n";
  write_file(fs::path(out_dir) / "manifest.yaml", m.str());
  files.push_back("manifest.yaml");
  return files;
}

}  // namespace riskg
