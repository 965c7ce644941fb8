#include "riskg/channel_model.hpp"

#include <cmath>
#include <numbers>

#include "riskg/linalg.hpp"

namespace riskg {

void ScenarioConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(bs_horizontal >= 1 && bs_vertical >= 1, "BS array dimensions must be >= 1");
  require(ris_horizontal >= 1 && ris_vertical >= 1, "RIS array dimensions must be >= 1");
  require(eve_antennas >= 1, "eve_antennas must be >= 1");
  require(bs_correlation >= 0.0 && bs_correlation <= 1.0, "bs_correlation must lie in [0, 1]");
  require(wavelength > 0.0, "wavelength must be positive");
  require(ris_spacing > 0.0, "ris_spacing must be positive");
  require(eve_radius > 0.0, "eve_radius must be positive");
  require(pa_watts > 0.0 && pb_watts > 0.0, "transmit powers must be positive");
  require(noise_watts > 0.0, "noise power must be positive");
  require(zeta0 > 0.0, "zeta0 must be positive");
  require(distance(alice, bob) > 0.0 && distance(alice, ris) > 0.0 && distance(ris, bob) > 0.0,
          "node positions must be distinct");
}

namespace {

MatR toeplitz(int n, double rho) {
  MatR t(n, n);
  for (int i = 0; i < n; ++i) {
    double p = 1.0;
    t(i, i) = 1.0;
    for (int d = 1; i + d < n; ++d) {
      p *= rho;
      t(i, i + d) = p;
      t(i + d, i) = p;
    }
  }
  return t;
}

MatR kronecker(const MatR& a, const MatR& b) {
  MatR out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

MatC build_bs_correlation(int horizontal, int vertical, double rho) {
  if (horizontal < 1 || vertical < 1) throw ConfigError("BS array dimensions must be >= 1");
  if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("BS correlation must lie in [0, 1]");
  return kronecker(toeplitz(horizontal, rho), toeplitz(vertical, rho)).cast<Complex>();
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

MatR build_ris_correlation(int horizontal, int vertical, double spacing, double wavelength) {
  if (horizontal < 1 || vertical < 1) throw ConfigError("RIS array dimensions must be >= 1");
  if (!(spacing > 0.0) || !(wavelength > 0.0)) {
    throw ConfigError("RIS spacing and wavelength must be positive");
  }
  const int n = horizontal * vertical;
  MatR r(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      const double dy = spacing * (a % horizontal - b % horizontal);
      const double dz = spacing * (a / horizontal - b / horizontal);
      const double value = sinc(2.0 * std::hypot(dy, dz) / wavelength);
      r(a, b) = value;
      r(b, a) = value;
    }
  }
  return r;
}

double eve_cross_correlation(double distance, double wavelength) {
  if (distance < 0.0) throw std::invalid_argument("distance must be non-negative");
  const double j0 = std::cyl_bessel_j(0.0, 2.0 * std::numbers::pi * distance / wavelength);
  return j0 * j0;
}

double path_loss(double distance, double exponent, double zeta0, PathLossModel model) {
  if (!(distance > 0.0)) throw std::invalid_argument("path loss distance must be positive");
  const double power = zeta0 * std::pow(distance, -exponent);
  return model == PathLossModel::SqrtPower ? std::sqrt(power) : power;
}

CorrelationSet CorrelationSet::assemble(MatC rs, MatR ri, double beta_ra, double beta_rb,
                                        double beta_ab, std::vector<double> beta_rk,
                                        std::vector<double> beta_ak, std::vector<MatC> ris_cross,
                                        std::vector<MatC> direct_cross) {
  CorrelationSet c;
  c.M = static_cast<int>(rs.rows());
  c.N = static_cast<int>(ri.rows());
  c.K = static_cast<int>(beta_rk.size());
  if (beta_ak.size() != beta_rk.size() || ris_cross.size() != beta_rk.size() ||
      direct_cross.size() != beta_rk.size()) {
    throw std::invalid_argument("per-Eve inputs must all have K entries");
  }
  for (int k = 0; k < c.K; ++k) {
    if (ris_cross[k].rows() != c.N || ris_cross[k].cols() != c.N ||
        direct_cross[k].rows() != c.M || direct_cross[k].cols() != c.M) {
      throw std::invalid_argument("cross-covariance dimensions do not match R_S / R_I");
    }
  }
  c.rs = std::move(rs);
  c.ri = std::move(ri);
  c.rs_sqrt = linalg::hermitian_sqrt(c.rs);
  c.ri_sqrt = linalg::symmetric_sqrt(c.ri);
  c.beta_ra = beta_ra;
  c.beta_rb = beta_rb;
  c.beta_ab = beta_ab;
  c.beta_rk = std::move(beta_rk);
  c.beta_ak = std::move(beta_ak);
  c.ris_cross = std::move(ris_cross);
  c.direct_cross = std::move(direct_cross);

  c.ri_tilde = c.ri.transpose().cwiseProduct(c.ri);
  const MatC ri_sqrt_t = c.ri_sqrt.transpose().cast<Complex>();
  const MatC ri_c = c.ri.cast<Complex>();
  for (int k = 0; k < c.K; ++k) {
    c.ris_cross_tilde.push_back((ri_sqrt_t * c.ris_cross[k] * ri_sqrt_t).cwiseProduct(ri_c));
    c.direct_cross_tilde.push_back(c.rs_sqrt * c.direct_cross[k] * c.rs_sqrt);
  }
  return c;
}

std::vector<EveAntenna> place_eves(const ScenarioConfig& cfg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<EveAntenna> eves;
  eves.reserve(static_cast<std::size_t>(cfg.eve_antennas));
  for (int k = 0; k < cfg.eve_antennas; ++k) {
    const double r = cfg.eve_radius * std::sqrt(unit(rng));
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    EveAntenna e;
    e.position = {cfg.bob.x + r * std::cos(phi), cfg.bob.y + r * std::sin(phi), cfg.bob.z};
    e.rho = eve_cross_correlation(r, cfg.wavelength);
    eves.push_back(e);
  }
  return eves;
}

CorrelationSet build_correlation_set(const ScenarioConfig& cfg, const std::vector<EveAntenna>& eves) {
  cfg.validate();
  const int m = cfg.bs_antennas();
  const int n = cfg.ris_elements();
  const auto model = cfg.path_loss_model;
  std::vector<double> beta_rk, beta_ak;
  std::vector<MatC> ris_cross, direct_cross;
  for (const EveAntenna& e : eves) {
    beta_rk.push_back(path_loss(distance(cfg.ris, e.position), cfg.alpha_er, cfg.zeta0, model));
    beta_ak.push_back(path_loss(distance(cfg.alice, e.position), cfg.alpha_ea, cfg.zeta0, model));
    ris_cross.push_back(MatC::Identity(n, n) * e.rho);
    direct_cross.push_back(MatC::Identity(m, m) * e.rho);
  }
  return CorrelationSet::assemble(
      build_bs_correlation(cfg.bs_horizontal, cfg.bs_vertical, cfg.bs_correlation),
      build_ris_correlation(cfg.ris_horizontal, cfg.ris_vertical, cfg.ris_spacing, cfg.wavelength),
      path_loss(distance(cfg.alice, cfg.ris), cfg.alpha_ar, cfg.zeta0, model),
      path_loss(distance(cfg.ris, cfg.bob), cfg.alpha_rb, cfg.zeta0, model),
      path_loss(distance(cfg.alice, cfg.bob), cfg.alpha_ab, cfg.zeta0, model), std::move(beta_rk),
      std::move(beta_ak), std::move(ris_cross), std::move(direct_cross));
}

VecC complex_gaussian(Eigen::Index n, std::mt19937_64& rng, double variance) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * variance));
  VecC out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = Complex(normal(rng), normal(rng));
  return out;
}

namespace {

MatC residual_sqrt(const MatC& map) {
  const Eigen::Index n = map.cols();
  MatC res = MatC::Identity(n, n) - map.adjoint() * map;
  return linalg::hermitian_sqrt(0.5 * (res + res.adjoint()));
}

}  // namespace

ChannelSampler::ChannelSampler(const CorrelationSet& corr)
    : corr_(&corr), ri_sqrt_c_(corr.ri_sqrt.cast<Complex>()) {
  for (int k = 0; k < corr.K; ++k) {
    // E{h_rb h_rk^H} = X = C^T, so h_rk = X^H h_rb + (I - X^H X)^{1/2} g.
    const MatC x = corr.ris_cross[k].transpose();
    ris_map_.push_back(x.adjoint());
    ris_residual_.push_back(residual_sqrt(x));
    direct_map_.push_back(corr.direct_cross[k].adjoint());
    direct_residual_.push_back(residual_sqrt(corr.direct_cross[k]));
  }
}

ChannelRealization ChannelSampler::draw(std::mt19937_64& rng) const {
  const CorrelationSet& c = *corr_;
  ChannelRealization out;
  MatC h(c.M, c.N);
  for (int j = 0; j < c.N; ++j) h.col(j) = complex_gaussian(c.M, rng);
  out.g_ar = std::sqrt(c.beta_ra) * c.rs_sqrt * h * ri_sqrt_c_;

  const VecC hrb = complex_gaussian(c.N, rng);
  const VecC hab = complex_gaussian(c.M, rng);
  out.h_rb = std::sqrt(c.beta_rb) * ri_sqrt_c_ * hrb;
  out.h_ab = std::sqrt(c.beta_ab) * c.rs_sqrt * hab;
  for (int k = 0; k < c.K; ++k) {
    const VecC hrk = ris_map_[k] * hrb + ris_residual_[k] * complex_gaussian(c.N, rng);
    const VecC hak = direct_map_[k] * hab + direct_residual_[k] * complex_gaussian(c.M, rng);
    out.h_rk.push_back(std::sqrt(c.beta_rk[k]) * ri_sqrt_c_ * hrk);
    out.h_ak.push_back(std::sqrt(c.beta_ak[k]) * c.rs_sqrt * hak);
  }
  return out;
}

ChannelRealization sample_channels(const CorrelationSet& corr, std::mt19937_64& rng) {
  return ChannelSampler(corr).draw(rng);
}

}  // namespace riskg
