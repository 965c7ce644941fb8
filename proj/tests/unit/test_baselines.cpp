#include <doctest.h>

#include "riskg/baselines.hpp"
#include "riskg/bsum.hpp"
#include "riskg/kgr.hpp"
#include "riskg/linalg.hpp"
#include "test_support.hpp"

using namespace riskg;
using namespace riskg::testing;

namespace {

double transmit_gain(const VecC& w, const MatC& rs) {
  return (w.transpose() * rs * w.conjugate())(0, 0).real();
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("random beamformers meet the power and modulus constraints") {
  std::mt19937_64 rng(1);
  const VecC w1 = random_beamforming(1, 0.3, rng);
  CHECK(std::norm(w1(0)) == doctest::Approx(0.3).epsilon(1e-14));
  const VecC w = random_beamforming(6, 2.0, rng);
  CHECK(w.squaredNorm() == doctest::Approx(2.0).epsilon(1e-14));
  const VecC v = random_reflect(9, rng);
  for (int i = 0; i < 9; ++i) CHECK(std::abs(v(i)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("random beamforming averages to P_A and N") {
  std::mt19937_64 rng(2);
  const MatC rs = build_bs_correlation(3, 2, 0.6);
  const MatR ri = build_ris_correlation(3, 2, 0.025, 0.1);
  const MatC ri_tilde = ri.cwiseProduct(ri).cast<Complex>();
  const double pa = 0.5;
  double sw = 0.0, sv = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    sw += transmit_gain(random_beamforming(6, pa, rng), rs);
    const VecC v = random_reflection(6, rng);
    sv += v.dot(ri_tilde * v).real();
  }
  CHECK(sw / draws == doctest::Approx(pa).epsilon(0.01));
  CHECK(sv / draws == doctest::Approx(6.0).epsilon(0.01));
}

TEST_CASE("eigen beamforming and equal-phase reflection") {
  const VecC e = eigen_beamforming(MatC::Identity(3, 3), 4.0);
  CHECK((e - 2.0 * VecC::Unit(3, 0)).norm() <= 1e-14);

  const MatR ri = build_ris_correlation(3, 2, 0.025, 0.1);
  const VecC v = equal_phase_reflection(6);
  const double frob = ri.squaredNorm();
  CHECK(v.dot(ri.cwiseProduct(ri).cast<Complex>() * v).real() == doctest::Approx(frob).epsilon(1e-14));

  const MatC rs = build_bs_correlation(4, 1, 0.5);
  Eigen::SelfAdjointEigenSolver<MatC> es(rs);
  const VecC w = eigen_beamforming(rs, 0.7);
  CHECK(transmit_gain(w, rs) == doctest::Approx(0.7 * es.eigenvalues().maxCoeff()).epsilon(1e-12));
}

TEST_CASE("subgradient agrees with mirror-prox on a smooth K = 1 surrogate") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    VecR p(6);
    for (int i = 0; i < 6; ++i) p(i) = uniform(rng, -2.0, 2.0);
    const SaddleProblem sp = SaddleProblem::from_linear(VecR::Constant(1, uniform(rng, 0.2, 2.0)),
                                                        -p.transpose(), VecR::Zero(1), ConstraintKind::Discs);
    const MirrorProxResult mp = mirror_prox_solve(sp, {VecR::Zero(6), VecR()});
    const VecR sg = projected_subgradient(sp, VecR::Zero(6));
    CHECK(std::abs(surrogate_min(sp, sg) - mp.objective) <= 1e-2 * std::max(1.0, std::abs(mp.objective)));
  }
}

TEST_CASE("subgradient on a tiny saddle problem is within the grid tolerance") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 5; ++t) {
    VecR tau(2);
    tau << uniform(rng, 0.2, 2.0), uniform(rng, 0.2, 2.0);
    MatR p(2, 4);
    for (int i = 0; i < 8; ++i) p(i) = uniform(rng, -2.0, 2.0);
    const VecR q = VecR::Random(2);
    const SaddleProblem sp = SaddleProblem::from_linear(tau, p, q, ConstraintKind::Discs);
    const double oracle = saddle_grid_oracle(sp);
    const VecR sg = projected_subgradient(sp, VecR::Zero(4));
    CHECK(std::abs(surrogate_min(sp, sg) - oracle) <= 1e-2 * std::max(1.0, std::abs(oracle)));
  }
}

TEST_CASE("subgradient from the independent-Eve optimum does not degrade") {
  std::mt19937_64 rng(5);
  const ScenarioConfig sc = random_scenario(rng, 2, 2, 2, 2, 2);
  const CorrelationSet corr = correlation_for(sc, rng, true);
  const LiftedProblem lp = lift(corr, sc.pa_watts, sc.noise_watts);
  const RealPoint opt = default_init(lp, corr.rs);
  SubgradientOptions o;
  o.steps = 2000;
  const RealPoint r = projected_subgradient(lp, opt, o);
  CHECK(min_objective(lp, r) >= min_objective(lp, opt) * (1 - 1e-9));
  CHECK(is_feasible(lp, r));
}

TEST_CASE("grid search: closed-form recovery, refinement, and BSUM bound") {
  std::mt19937_64 rng(6);
  const ScenarioConfig sc = random_scenario(rng, 2, 1, 2, 1, 1);
  const CorrelationSet ind = correlation_for(sc, rng, true);
  const LiftedProblem lp = lift(ind, sc.pa_watts, sc.noise_watts);
  const double fopt = min_objective(lp, default_init(lp, ind.rs));
  const GridSearchResult g = grid_search(lp, 64);
  CHECK(g.objective <= fopt * (1 + 1e-12));
  CHECK(g.objective >= fopt * (1 - 1e-2));

  ScenarioConfig cs = sc;
  cs.eve_antennas = 2;
  cs.eve_radius = 0.02;
  const CorrelationSet corr = correlation_for(cs, rng);
  const LiftedProblem lc = lift(corr, cs.pa_watts, cs.noise_watts);
  const GridSearchResult coarse = grid_search(lc, 16);
  const GridSearchResult fine = grid_search(lc, 32);
  CHECK(fine.objective >= coarse.objective);
  CHECK(fine.evaluated > coarse.evaluated);
  const BsumResult b = bsum_solve(lc, default_init(lc, corr.rs), {});
  CHECK(grid_search(lc, 64).objective >= b.trace.back().objective * (1 - 1e-3));
}

TEST_CASE("grid search rejects large instances") {
  std::mt19937_64 rng(7);
  const ScenarioConfig sc = random_scenario(rng, 2, 1, 3, 1, 1);
  const CorrelationSet corr = correlation_for(sc, rng);
  CHECK_THROWS(grid_search(lift(corr, sc.pa_watts, sc.noise_watts), 16));
}

TEST_CASE("no-RIS baseline equals the v = 0 evaluation") {
  std::mt19937_64 rng(8);
  const ScenarioConfig sc = random_scenario(rng, 3, 1, 2, 2, 2);
  const CorrelationSet corr = correlation_for(sc, rng);
  const VecC w = eigen_beamforming(corr.rs, sc.pa_watts);
  const double a = min_kgr(w, VecC::Zero(corr.N), corr, sc.pb_watts, sc.noise_watts);
  double b = 1e300;
  for (int k = 0; k < corr.K; ++k) {
    b = std::min(b, kgr_determinant(covariance_blocks(w, VecC::Zero(corr.N), corr, sc.pb_watts, sc.noise_watts, k)));
  }
  CHECK(rel_err(a, b) < 1e-10);
}

TEST_CASE("correlated design beats the i.i.d.-assumption designs") {
  std::mt19937_64 rng(9);
  for (int s = 0; s < 5; ++s) {
    ScenarioConfig sc = random_scenario(rng, 3, 2, 3, 2, 2);
    sc.bs_correlation = uniform(rng, 0.2, 0.8);
    sc.ris_spacing = sc.wavelength / 4;
    const CorrelationSet corr = correlation_for(sc, rng);
    const LiftedProblem lp = lift(corr, sc.pa_watts, sc.noise_watts);
    const BsumResult full = bsum_solve(lp, default_init(lp, corr.rs), {});
    RealPoint at_ris = default_init(lp, corr.rs);
    at_ris.v = lift_vector(random_reflection(corr.N, rng));
    BsumOptions only_w;
    only_w.update_v = false;
    const BsumResult iid_ris = bsum_solve(lp, at_ris, only_w);
    RealPoint at_bs = default_init(lp, corr.rs);
    at_bs.w = lift_vector(random_beamforming(corr.M, sc.pa_watts, rng));
    BsumOptions only_v;
    only_v.update_w = false;
    const BsumResult iid_bs = bsum_solve(lp, at_bs, only_v);
    const double f = full.trace.back().objective;
    CHECK(f >= iid_ris.trace.back().objective - 1e-8 * std::abs(f));
    CHECK(f >= iid_bs.trace.back().objective - 1e-8 * std::abs(f));
  }
}

TEST_CASE("baseline names") {
  CHECK(to_string(BaselineKind::NoRis) == "no_ris");
  CHECK(to_string(BaselineKind::IidDesignAtRis) == "iid_design_at_ris");
}

}  // TEST_SUITE
