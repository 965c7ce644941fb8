#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "riskg/channel_model.hpp"

namespace riskg {

using Bits = std::vector<std::uint8_t>;

// bit = 1 when the gain exceeds the empirical median of the sequence.
// A constant sequence yields all zeros (`constant`, when given, is set).
Bits quantize_cdf_1bit(const std::vector<double>& gains, bool* constant = nullptr);

// Hamming distance over length.
double bdr(const Bits& a, const Bits& b);

struct RandomnessReport {
  double frequency_p = 0.0;  // monobit frequency test
  double runs_p = 0.0;
  bool passes(double threshold = 0.01) const { return frequency_p > threshold && runs_p > threshold; }
};

// Frequency (monobit) and runs tests; needs >= 100 bits.
RandomnessReport randomness_tests(const Bits& bits);

struct ProbeGains {
  std::vector<double> alice;  // |h_a| / sqrt(P_B)
  std::vector<double> bob;    // |h_b|
};

// `probes` independent channel probings with fixed (w, v): fresh small-scale
// fading and fresh noise per probe.
ProbeGains simulate_probes(const VecC& w, const VecC& v, const CorrelationSet& corr, double pb,
                           double sigma2, int probes, std::mt19937_64& rng);

}  // namespace riskg
