#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "riskg/kgr.hpp"
#include "test_support.hpp"

using namespace riskg;
using namespace riskg::testing;

TEST_SUITE("kgr_core") {

TEST_CASE("v = 0 removes the RIS path from R_aa") {
  std::mt19937_64 rng(1);
  const ScenarioConfig sc = random_scenario(rng, 3, 2, 2, 2, 2);
  const CorrelationSet corr = correlation_for(sc, rng);
  const VecC w = random_transmit(corr.M, sc.pa_watts, rng, 0.7);
  const CovarianceBlocks b = covariance_blocks(w, VecC::Zero(corr.N), corr, sc.pb_watts, sc.noise_watts, 0);
  const double s = (w.transpose() * corr.rs * w.conjugate())(0, 0).real();
  const double expect = sc.pb_watts * corr.beta_ab * s + w.squaredNorm() * sc.noise_watts;
  CHECK(rel_err(b.raa, expect) < 1e-13);
}

TEST_CASE("independent Eve has zero cross blocks and the block-diagonal rate") {
  std::mt19937_64 rng(2);
  const ScenarioConfig sc = random_scenario(rng, 2, 2, 3, 1, 2);
  const CorrelationSet corr = correlation_for(sc, rng, true);
  const VecC w = random_transmit(corr.M, sc.pa_watts, rng);
  const VecC v = random_reflect(corr.N, rng);
  for (int k = 0; k < corr.K; ++k) {
    const CovarianceBlocks b = covariance_blocks(w, v, corr, sc.pb_watts, sc.noise_watts, k);
    CHECK(std::abs(b.rbe) == 0.0);
    CHECK(std::abs(b.rae) == 0.0);
    const double expect =
        std::log2(b.raa * b.rbb / (b.raa * b.rbb - std::norm(b.rab)));
    CHECK(rel_err(kgr_determinant(b), expect) < 1e-10);
  }
}

TEST_CASE("uncorrelated uplink and downlink estimates share no key") {
  CovarianceBlocks b;
  b.raa = 2.0;
  b.rbb = 3.0;
  b.ree = 1.5;
  CHECK(std::abs(kgr_determinant(b)) < 1e-14);
}

TEST_CASE("closed form equals the determinant definition") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const ScenarioConfig sc = random_sized_scenario(rng, 6, 8, 3);
    const CorrelationSet corr = correlation_for(sc, rng);
    const VecC w = random_transmit(corr.M, sc.pa_watts, rng, uniform(rng, 0.1, 1.0));
    const VecC v = random_reflect(corr.N, rng, t % 2 == 0);
    for (int k = 0; k < corr.K; ++k) {
      const double det = kgr_determinant(covariance_blocks(w, v, corr, sc.pb_watts, sc.noise_watts, k));
      const double cf = kgr_closed_form(w, v, corr, sc.pb_watts, sc.noise_watts, k);
      CHECK(std::abs(cf - det) <= 1e-9 * std::abs(det));
    }
  }
}

TEST_CASE("rate vanishes monotonically as noise dominates") {
  std::mt19937_64 rng(4);
  const ScenarioConfig sc = random_scenario(rng, 2, 1, 2, 2, 1);
  const CorrelationSet corr = correlation_for(sc, rng, true);
  const VecC w = random_transmit(corr.M, sc.pa_watts, rng);
  const VecC v = random_reflect(corr.N, rng);
  double prev = kgr_closed_form(w, v, corr, sc.pb_watts, 1e-14, 0);
  for (double s2 = 1e-13; s2 < 1e2; s2 *= 10.0) {
    const double r = kgr_closed_form(w, v, corr, sc.pb_watts, s2, 0);
    CHECK(r <= prev);
    prev = r;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("with an independent Eve the rate is monotone in g_u") {
  std::mt19937_64 rng(5);
  const ScenarioConfig sc = random_scenario(rng, 3, 1, 3, 2, 1);
  const CorrelationSet corr = correlation_for(sc, rng, true);
  const VecC w = random_transmit(corr.M, sc.pa_watts, rng);
  const VecC v = random_reflect(corr.N, rng);
  double prev_gu = -1.0, prev_r = -1.0;
  for (double a = 0.0; a <= 1.0 + 1e-12; a += 0.05) {
    const double gu = gains(w, a * v, corr, 0).gu;
    const double r = kgr_closed_form(w, a * v, corr, sc.pb_watts, sc.noise_watts, 0);
    CHECK(gu > prev_gu);
    CHECK(r > prev_r);
    prev_gu = gu;
    prev_r = r;
  }
}

TEST_CASE("invariants: non-negative, phase invariant, Cauchy-Schwarz, R_ab real") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 30; ++t) {
    const ScenarioConfig sc = random_sized_scenario(rng, 6, 8, 3);
    const CorrelationSet corr = correlation_for(sc, rng);
    const VecC w = random_transmit(corr.M, sc.pa_watts, rng, uniform(rng, 0.2, 1.0));
    const VecC v = random_reflect(corr.N, rng, true);
    const Complex rot = std::polar(1.0, uniform(rng, 0.0, 6.0));
    for (int k = 0; k < corr.K; ++k) {
      const double r = kgr_closed_form(w, v, corr, sc.pb_watts, sc.noise_watts, k);
      CHECK(r >= -1e-9);
      const double r_rot = kgr_closed_form(w, rot * v, corr, sc.pb_watts, sc.noise_watts, k);
      CHECK(std::abs(r - r_rot) <= 1e-10 * std::max(1.0, std::abs(r)));
      const GainTriple g = gains(w, v, corr, k);
      CHECK(g.gu >= 0.0);
      CHECK(g.ge >= 0.0);
      CHECK(std::norm(g.gue) <= g.gu * g.ge * (1 + 1e-9));
      const CovarianceBlocks b = covariance_blocks(w, v, corr, sc.pb_watts, sc.noise_watts, k);
      CHECK(b.rab.imag() == 0.0);
      CHECK(std::abs(b.rae - std::sqrt(sc.pb_watts) * b.rbe) <= 1e-14 * std::abs(b.rae) + 1e-300);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(b.abe());
      CHECK(es.eigenvalues().minCoeff() >= -1e-9 * es.eigenvalues().maxCoeff());
    }
  }
}

TEST_CASE("lemma2_objective: independent Eve and phase invariance") {
  std::mt19937_64 rng(7);
  const ScenarioConfig sc = random_scenario(rng, 2, 2, 2, 2, 2);
  const CorrelationSet ind = correlation_for(sc, rng, true);
  const Lemma2Matrices m = lemma2_matrices(ind);
  const VecC wbar = random_transmit(ind.M, sc.pa_watts, rng);
  const VecC v = random_reflect(ind.N, rng);
  const double s = wbar.dot(ind.rs * wbar).real();
  const double u = v.dot(m.ru * v).real();
  CHECK(rel_err(lemma2_objective(wbar, v, ind, sc.noise_watts, 0), s * u) < 1e-14);

  const CorrelationSet corr = correlation_for(sc, rng);
  const Complex rot = std::polar(1.0, 1.234);
  for (int k = 0; k < corr.K; ++k) {
    const double f = lemma2_objective(wbar, v, corr, sc.noise_watts, k);
    CHECK(rel_err(f, lemma2_objective(wbar, rot * v, corr, sc.noise_watts, k)) < 1e-12);
  }
}

TEST_CASE("lemma2_objective ranks unit-modulus points like the rate") {
  std::mt19937_64 rng(8);
  for (int s = 0; s < 3; ++s) {
    ScenarioConfig sc = random_scenario(rng, 3, 2, 3, 2, 1);
    sc.eve_radius = 0.02;
    const CorrelationSet corr = correlation_for(sc, rng);
    std::vector<double> f, r;
    for (int i = 0; i < 100; ++i) {
      const VecC w = random_transmit(corr.M, sc.pa_watts, rng);
      const VecC v = random_reflect(corr.N, rng);
      f.push_back(lemma2_objective(w.conjugate(), v, corr, sc.noise_watts, 0));
      r.push_back(kgr_closed_form(w, v, corr, sc.pb_watts, sc.noise_watts, 0));
    }
    std::vector<int> by_f(f.size()), by_r(r.size());
    std::iota(by_f.begin(), by_f.end(), 0);
    std::iota(by_r.begin(), by_r.end(), 0);
    std::sort(by_f.begin(), by_f.end(), [&](int a, int b) { return f[a] < f[b]; });
    std::sort(by_r.begin(), by_r.end(), [&](int a, int b) { return r[a] < r[b]; });
    CHECK(by_f == by_r);
  }
}

TEST_CASE("dimension mismatch is rejected") {
  std::mt19937_64 rng(9);
  const ScenarioConfig sc = random_scenario(rng, 2, 1, 2, 1, 1);
  const CorrelationSet corr = correlation_for(sc, rng);
  CHECK_THROWS(gains(VecC::Ones(3), VecC::Ones(2), corr, 0));
  CHECK_THROWS(gains(VecC::Ones(2), VecC::Ones(2), corr, 1));
}

}  // TEST_SUITE
