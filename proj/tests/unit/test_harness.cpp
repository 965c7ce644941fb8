#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "riskg/config.hpp"
#include "riskg/experiments.hpp"
#include "riskg/keygen.hpp"
#include "test_support.hpp"

using namespace riskg;
using namespace riskg::testing;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream o;
  o << in.rdbuf();
  return o.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("riskg_test_" + name);
  fs::remove_all(p);
  return p;
}

ExperimentConfig small_config(const std::string& experiment) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  cfg.trials = 2;
  cfg.probes = 500;
  ScenarioConfig& s = cfg.scenario;
  s.bs_horizontal = 5;
  s.bs_vertical = 2;
  s.ris_horizontal = 5;
  s.ris_vertical = 2;
  s.eve_antennas = 3;
  if (experiment == "convergence" || experiment == "kgr_vs_N" || experiment == "timing") {
    cfg.sweep = {10, 20};
  } else if (experiment == "kgr_vs_M") {
    cfg.sweep = {5, 10};
  } else if (experiment == "kgr_vs_eve_radius") {
    cfg.sweep = {0.05, 1.0};
  } else {
    cfg.sweep = {10, 30};
  }
  return cfg;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("median quantization") {
  CHECK(quantize_cdf_1bit({1, 2, 3, 4}) == Bits{0, 0, 1, 1});
  CHECK(quantize_cdf_1bit({3, 1, 2}) == Bits{1, 0, 0});
  bool constant = false;
  CHECK(quantize_cdf_1bit({2, 2, 2}, &constant) == Bits{0, 0, 0});
  CHECK(constant);
  CHECK_THROWS(quantize_cdf_1bit({1.0}));
}

TEST_CASE("bit disagreement ratio") {
  const Bits a{0, 1, 1, 0, 1, 0, 0, 1};
  Bits b = a;
  CHECK(bdr(a, b) == 0.0);
  b[3] = 1;
  CHECK(bdr(a, b) == 0.125);
  Bits c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = 1 - a[i];
  CHECK(bdr(a, c) == 1.0);
  CHECK_THROWS(bdr(a, Bits{0, 1}));
  std::vector<double> g{0.3, 0.1, 0.7, 0.5, 0.2};
  CHECK(bdr(quantize_cdf_1bit(g), quantize_cdf_1bit(g)) == 0.0);
}

TEST_CASE("randomness tests on fixed patterns") {
  Bits alt(1000);
  for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2;
  const RandomnessReport r = randomness_tests(alt);
  CHECK(r.frequency_p == doctest::Approx(1.0));
  CHECK(r.runs_p < 1e-10);
  CHECK_FALSE(r.passes());
  const RandomnessReport ones = randomness_tests(Bits(1000, 1));
  CHECK(ones.frequency_p < 1e-10);
  CHECK_THROWS(randomness_tests(Bits(99, 0)));
}

TEST_CASE("randomness tests accept a good generator") {
  int passed = 0;
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed) + 1000);
    Bits bits(10000);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() >> 63);
    passed += randomness_tests(bits).passes();
  }
  CHECK(passed >= 98);
}

TEST_CASE("BDR falls with transmit power") {
  std::mt19937_64 rng(21);
  ScenarioConfig sc = random_scenario(rng, 5, 2, 6, 4, 3);
  const CorrelationSet corr = correlation_for(sc, rng);
  double prev = 1.0;
  for (double dbm : {0.0, 10.0, 20.0, 30.0}) {
    const double p = dbm_to_watts(dbm);
    const VecC w = std::sqrt(p) * VecC::Unit(corr.M, 0);
    std::mt19937_64 probe(5);
    const ProbeGains g = simulate_probes(w, VecC::Ones(corr.N), corr, p, sc.noise_watts, 20000, probe);
    const double e = bdr(quantize_cdf_1bit(g.alice), quantize_cdf_1bit(g.bob));
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("config parsing") {
  const ExperimentConfig c = parse_config(
      "experiment: kgr_vs_power\nsweep: [10, 20]\ntrials: 3\npa_dbm: 20\nnoise_dbm: -80\n"
      "ris_spacing_wavelengths: 0.5\nzeta0_db: -30\n");
  CHECK(c.experiment == "kgr_vs_power");
  CHECK(c.sweep == std::vector<double>{10, 20});
  CHECK(c.trials == 3);
  CHECK(c.scenario.pa_watts == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(c.scenario.noise_watts == doctest::Approx(1e-11).epsilon(1e-14));
  CHECK(c.scenario.ris_spacing == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(c.scenario.zeta0 == doctest::Approx(1e-3).epsilon(1e-14));

  CHECK_THROWS_AS(parse_config("bogus_key: 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("pa_dbm: 20\npa_watts: 0.1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("trials: 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("experiment: nope\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("bs_correlation: 1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("trials: [1, 2]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("- 1\n- 2\n"), ConfigError);
}

TEST_CASE("shipped configs load and name their experiment") {
  for (const std::string& name : experiment_names()) {
    const ExperimentConfig c = load_config(std::string(RISKG_SOURCE_DIR) + "/configs/" + name + ".yaml");
    CHECK(c.experiment == name);
    CHECK_FALSE(c.sweep.empty());
    for (double v : c.sweep) CHECK_NOTHROW(apply_sweep(c.scenario, name, v));
  }
}

TEST_CASE("presets") {
  ExperimentConfig c = small_config("kgr_vs_N");
  c.sweep = {10, 20, 40, 60};
  apply_preset(c, Preset::Desk);
  CHECK(c.trials == 50);
  CHECK(c.sweep == std::vector<double>{10, 20, 40});
  ExperimentConfig p = small_config("kgr_vs_N");
  apply_preset(p, Preset::Paper, 7);
  CHECK(p.trials == 7);
}

TEST_CASE("sweeps") {
  const ScenarioConfig base;
  CHECK(apply_sweep(base, "kgr_vs_N", 40).ris_elements() == 40);
  CHECK(apply_sweep(base, "kgr_vs_M", 20).bs_antennas() == 20);
  CHECK(apply_sweep(base, "kgr_vs_power", 30).pa_watts == doctest::Approx(1.0));
  CHECK(apply_sweep(base, "kgr_vs_eve_radius", 0.2).eve_radius == 0.2);
  CHECK_THROWS_AS(apply_sweep(base, "kgr_vs_N", 42), ConfigError);
  CHECK_THROWS_AS(apply_sweep(base, "fig9", 1), ConfigError);
}

TEST_CASE("runs are deterministic and independent of the worker count") {
  const ExperimentConfig cfg = small_config("kgr_vs_power");
  const fs::path a = scratch_dir("det_a");
  const fs::path b = scratch_dir("det_b");
  write_outputs(cfg, run_experiment(cfg, 1), a.string());
  const auto files = write_outputs(cfg, run_experiment(cfg, 3), b.string());
  for (const auto& f : files) CHECK(slurp(a / f) == slurp(b / f));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("every experiment completes a two-trial smoke run") {
  for (const std::string& name : experiment_names()) {
    CAPTURE(name);
    const ExperimentConfig cfg = small_config(name);
    const ExperimentResult res = run_experiment(cfg, 0);
    CHECK(res.records.size() == cfg.sweep.size() * 2 * experiment_methods(name).size());
    for (const RunRecord& r : res.records) {
      CHECK(std::isfinite(r.min_kgr));
      CHECK(r.min_kgr >= 0.0);
    }
    if (name == "convergence") CHECK_FALSE(res.traces.empty());
    if (name == "bdr_vs_power") {
      for (const RunRecord& r : res.records) CHECK((r.bdr >= 0.0 && r.bdr <= 1.0));
    }
    const fs::path dir = scratch_dir("smoke_" + name);
    const auto files = write_outputs(cfg, res, dir.string());
    CHECK(fs::exists(dir / "manifest.yaml"));
    const std::string manifest = slurp(dir / "manifest.yaml");
    CHECK(manifest.find("config_hash: " + config_hash(cfg)) != std::string::npos);
    CHECK(manifest.find("library_version: ") != std::string::npos);
    const std::string csv = slurp(dir / files.front());
    CHECK(csv.rfind("# riskg run records, schema v1\n", 0) == 0);
    fs::remove_all(dir);
  }
}

TEST_CASE("config hash tracks the configuration") {
  ExperimentConfig a = small_config("kgr_vs_power");
  ExperimentConfig b = a;
  CHECK(config_hash(a) == config_hash(b));
  b.scenario.seed = 2;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("experiment errors") {
  ExperimentConfig cfg = small_config("kgr_vs_power");
  cfg.experiment = "fig9";
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  cfg = small_config("kgr_vs_power");
  cfg.sweep.clear();
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);

  cfg = small_config("kgr_vs_power");
  cfg.trials = 1;
  cfg.sweep = {10};
  const fs::path blocker = scratch_dir("blocker");
  { std::ofstream(blocker) << "x"; }
  CHECK_THROWS(write_outputs(cfg, run_experiment(cfg), (blocker / "sub").string()));
  fs::remove(blocker);
}

TEST_CASE("command line exit codes") {
  const std::string sim = RISKG_SIM_PATH;
  const fs::path dir = scratch_dir("cli");
  fs::create_directories(dir);
  {
    std::ofstream(dir / "ok.yaml") << "experiment: kgr_vs_M\nsweep: [5]\ntrials: 1\n";
    std::ofstream(dir / "bad.yaml") << "experiment: kgr_vs_M\nwarp_factor: 9\n";
  }
  auto run = [&](const std::string& args) {
    const int status = std::system((sim + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  CHECK(run("kgr_vs_M --config " + (dir / "ok.yaml").string() + " --out " + (dir / "out").string()) == 0);
  CHECK(fs::exists(dir / "out" / "kgr_vs_M_bsum.csv"));
  CHECK(run("kgr_vs_M --config " + (dir / "bad.yaml").string()) == 2);
  CHECK(run("kgr_vs_N --config " + (dir / "ok.yaml").string()) == 2);
  fs::remove_all(dir);
}

}  // TEST_SUITE
