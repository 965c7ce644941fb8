#include "riskg/keygen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace riskg {

Bits quantize_cdf_1bit(const std::vector<double>& gains, bool* constant) {
  if (gains.size() < 2) throw std::invalid_argument("quantization needs at least two samples");
  std::vector<double> sorted = gains;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  if (constant != nullptr) *constant = sorted.front() == sorted.back();
  Bits out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = gains[i] > median ? 1 : 0;
  return out;
}

double bdr(const Bits& a, const Bits& b) {
  if (a.size() != b.size()) throw std::invalid_argument("bit sequences differ in length");
  if (a.empty()) throw std::invalid_argument("empty bit sequences");
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += a[i] != b[i];
  return static_cast<double>(diff) / static_cast<double>(a.size());
}

RandomnessReport randomness_tests(const Bits& bits) {
  const std::size_t n = bits.size();
  if (n < 100) throw std::invalid_argument("randomness tests need at least 100 bits");
  const double nd = static_cast<double>(n);
  double sum = 0.0;
  std::size_t ones = 0;
  for (auto b : bits) {
    sum += b ? 1.0 : -1.0;
    ones += b;
  }
  RandomnessReport r;
  r.frequency_p = std::erfc(std::abs(sum) / std::sqrt(2.0 * nd));

  const double pi = static_cast<double>(ones) / nd;
  if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(nd)) {
    r.runs_p = 0.0;  // frequency prerequisite fails
  } else {
    double v = 1.0;
    for (std::size_t i = 0; i + 1 < n; ++i) v += bits[i] != bits[i + 1];
    const double num = std::abs(v - 2.0 * nd * pi * (1.0 - pi));
    r.runs_p = std::erfc(num / (2.0 * std::sqrt(2.0 * nd) * pi * (1.0 - pi)));
  }
  return r;
}

ProbeGains simulate_probes(const VecC& w, const VecC& v, const CorrelationSet& corr, double pb,
                           double sigma2, int probes, std::mt19937_64& rng) {
  // w^T G_ar = sqrt(beta_ra) (R_S^{1/2 T} w)^T H R_I^{1/2}, and (R_S^{1/2 T} w)^T H has
  // i.i.d. CN(0, w^T R_S w^*) entries, so the cascaded term reduces to
  // sqrt(beta_r s) g^T R_I^{1/2} diag(v) R_I^{1/2} h with g, h ~ CN(0, I).
  const double s = (w.transpose() * corr.rs * w.conjugate())(0, 0).real();
  const MatC ri_sqrt = corr.ri_sqrt.cast<Complex>();
  const MatC b = ri_sqrt * v.asDiagonal() * ri_sqrt;
  const double ris_scale = std::sqrt(corr.beta_r() * s);
  const double direct_scale = std::sqrt(corr.beta_ab * s);
  const double noise_a = w.squaredNorm() * sigma2;
  const double spb = std::sqrt(pb);

  ProbeGains out;
  out.alice.reserve(static_cast<std::size_t>(probes));
  out.bob.reserve(static_cast<std::size_t>(probes));
  for (int i = 0; i < probes; ++i) {
    const VecC g = complex_gaussian(corr.N, rng);
    const VecC h = complex_gaussian(corr.N, rng);
    const Complex direct = complex_gaussian(1, rng)(0);
    const Complex c = ris_scale * (g.transpose() * b * h)(0, 0) + direct_scale * direct;
    const Complex ha = spb * c + complex_gaussian(1, rng, noise_a)(0);
    const Complex hb = c + complex_gaussian(1, rng, sigma2)(0);
    out.alice.push_back(std::abs(ha) / spb);
    out.bob.push_back(std::abs(hb));
  }
  return out;
}

}  // namespace riskg
