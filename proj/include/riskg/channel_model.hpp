#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "riskg/types.hpp"

namespace riskg {

enum class PathLossModel {
  // beta = sqrt(zeta0 * d^-alpha), the amplitude-style form used by the reference scenario
  SqrtPower,
  // beta = zeta0 * d^-alpha, the conventional power-law form
  Power,
};

// Physical parameters of one scenario. All values are linear SI units
// (meters, watts); dB/dBm conversion happens once, in the config loader.
struct ScenarioConfig {
  Position alice{5.0, 0.0, 20.0};
  Position bob{3.0, 100.0, 0.0};
  Position ris{0.0, 60.0, 2.0};

  int bs_horizontal = 5;  // N_H^t
  int bs_vertical = 3;    // N_V^t
  int ris_horizontal = 5;
  int ris_vertical = 4;
  int eve_antennas = 5;  // K

  double wavelength = 0.1;
  double ris_spacing = 0.025;
  double bs_correlation = 0.3;  // rho
  double eve_radius = 1.0;

  double pa_watts = 0.1;
  double pb_watts = 0.1;
  double noise_watts = 1e-11;

  double alpha_ab = 4.0;
  double alpha_ar = 3.5;
  double alpha_rb = 2.0;
  double alpha_ea = 4.0;
  double alpha_er = 2.0;
  double zeta0 = 1e-3;
  PathLossModel path_loss_model = PathLossModel::SqrtPower;

  std::uint64_t seed = 1;

  int bs_antennas() const { return bs_horizontal * bs_vertical; }
  int ris_elements() const { return ris_horizontal * ris_vertical; }

  // Throws ConfigError on the first violated invariant.
  void validate() const;
};

// Kronecker product of two Toeplitz factors [R]_{ij} = rho^|i-j|.
MatC build_bs_correlation(int horizontal, int vertical, double rho);

// Isotropic-scattering RIS correlation on a rectangular grid in the y-z plane:
// [R_I]_{nm} = sinc(2 |u_n - u_m| / lambda), sinc(x) = sin(pi x) / (pi x).
MatR build_ris_correlation(int horizontal, int vertical, double spacing, double wavelength);

// Normalized sinc, sinc(0) = 1.
double sinc(double x);

// Squared zeroth-order Bessel function of the first kind at 2 pi d / lambda.
double eve_cross_correlation(double distance, double wavelength);

double path_loss(double distance, double exponent, double zeta0,
                 PathLossModel model = PathLossModel::SqrtPower);

// Statistics of every link, plus the derived Hadamard/sandwich products that
// the rate expressions consume. Build through `assemble` so the derived members
// stay consistent with the primaries.
struct CorrelationSet {
  int M = 0;
  int N = 0;
  int K = 0;

  MatC rs;        // R_S, M x M Hermitian PSD, unit diagonal
  MatR ri;        // R_I, N x N symmetric PSD, unit diagonal
  MatC rs_sqrt;   // R_S^{1/2}
  MatR ri_sqrt;   // R_I^{1/2}

  // Small-scale cross-covariances between Bob's and Eve antenna k's channels:
  // ris_cross[k] = E{h_rk^* h_rb^T} (N x N), direct_cross[k] = E{h_ab h_ak^H} (M x M).
  std::vector<MatC> ris_cross;
  std::vector<MatC> direct_cross;

  double beta_ra = 0.0;
  double beta_rb = 0.0;
  double beta_ab = 0.0;
  std::vector<double> beta_rk;
  std::vector<double> beta_ak;

  // Derived.
  MatR ri_tilde;                     // R_I^T o R_I
  std::vector<MatC> ris_cross_tilde;     // ((R_I^{1/2})^T C_k (R_I^{1/2})^T) o R_I
  std::vector<MatC> direct_cross_tilde;  // R_S^{1/2} C_k R_S^{1/2}

  double beta_r() const { return beta_ra * beta_rb; }
  double beta_r_eve(int k) const { return beta_ra * beta_rk[static_cast<std::size_t>(k)]; }

  static CorrelationSet assemble(MatC rs, MatR ri, double beta_ra, double beta_rb, double beta_ab,
                                 std::vector<double> beta_rk, std::vector<double> beta_ak,
                                 std::vector<MatC> ris_cross, std::vector<MatC> direct_cross);
};

// Eve antenna k under the scalar cross-correlation model.
struct EveAntenna {
  Position position;
  double rho = 0.0;  // cross-correlation with Bob, R_bk^r = rho I, R_bk^d = rho I
};

// Uniform placement inside a disc of radius `radius` centred at Bob, at Bob's height.
std::vector<EveAntenna> place_eves(const ScenarioConfig& cfg, std::mt19937_64& rng);

// Full statistics for the configured geometry and the given Eve placement.
CorrelationSet build_correlation_set(const ScenarioConfig& cfg, const std::vector<EveAntenna>& eves);

struct ChannelRealization {
  MatC g_ar;  // M x N
  VecC h_rb;  // N
  VecC h_ab;  // M
  std::vector<VecC> h_rk;  // N each
  std::vector<VecC> h_ak;  // M each
};

// One draw of every channel, with Eve's small-scale fading jointly Gaussian
// with Bob's at the cross-covariances stored in `corr`.
ChannelRealization sample_channels(const CorrelationSet& corr, std::mt19937_64& rng);

// Vector of i.i.d. CN(0, variance) entries.
VecC complex_gaussian(Eigen::Index n, std::mt19937_64& rng, double variance = 1.0);

// Precomputes the square roots `sample_channels` needs so repeated draws
// (Monte-Carlo loops) stay cheap.
class ChannelSampler {
 public:
  explicit ChannelSampler(const CorrelationSet& corr);
  ChannelRealization draw(std::mt19937_64& rng) const;

 private:
  const CorrelationSet* corr_;
  MatC ri_sqrt_c_;
  std::vector<MatC> ris_map_;       // X^H with X = E{h_rb h_rk^H}
  std::vector<MatC> ris_residual_;  // (I - X^H X)^{1/2}
  std::vector<MatC> direct_map_;
  std::vector<MatC> direct_residual_;
};

}  // namespace riskg
