#include "riskg/kgr.hpp"

#include <cmath>
#include <limits>

#include "riskg/linalg.hpp"

namespace riskg {

Eigen::Matrix2cd CovarianceBlocks::ae() const {
  Eigen::Matrix2cd m;
  m << raa, rae, std::conj(rae), ree;
  return m;
}

Eigen::Matrix2cd CovarianceBlocks::be() const {
  Eigen::Matrix2cd m;
  m << rbb, rbe, std::conj(rbe), ree;
  return m;
}

Eigen::Matrix3cd CovarianceBlocks::abe() const {
  Eigen::Matrix3cd m;
  m << raa, rab, rae, std::conj(rab), rbb, rbe, std::conj(rae), std::conj(rbe), ree;
  return m;
}

namespace {

void check_dimensions(const VecC& w, const VecC& v, const CorrelationSet& corr, int k) {
  if (w.size() != corr.M || v.size() != corr.N) {
    throw std::invalid_argument("beamforming vectors do not match the correlation set");
  }
  if (k < 0 || k >= corr.K) throw std::out_of_range("Eve antenna index out of range");
}

// w^T A w^* for the transmit side (equivalently wbar^H A wbar).
Complex transmit_form(const VecC& w, const MatC& a) {
  return (w.transpose() * a * w.conjugate())(0, 0);
}

Complex reflect_form(const VecC& v, const MatC& a) { return v.dot(a * v); }

}  // namespace

GainTriple gains(const VecC& w, const VecC& v, const CorrelationSet& corr, int k) {
  check_dimensions(w, v, corr, k);
  const auto kk = static_cast<std::size_t>(k);
  const double s = transmit_form(w, corr.rs).real();
  const double vri = v.dot(corr.ri_tilde.cast<Complex>() * v).real();
  GainTriple g;
  g.gu = s * (corr.beta_r() * vri + corr.beta_ab);
  g.ge = s * (corr.beta_r_eve(k) * vri + corr.beta_ak[kk]);
  g.gue = s * reflect_form(v, corr.ris_cross_tilde[kk]) *
              std::sqrt(corr.beta_r() * corr.beta_r_eve(k)) +
          transmit_form(w, corr.direct_cross_tilde[kk]) *
              std::sqrt(corr.beta_ab * corr.beta_ak[kk]);
  return g;
}

CovarianceBlocks covariance_blocks(const VecC& w, const VecC& v, const CorrelationSet& corr,
                                   double pb, double sigma2, int k) {
  const GainTriple g = gains(w, v, corr, k);
  const double wn = w.squaredNorm();
  const double spb = std::sqrt(pb);
  CovarianceBlocks b;
  b.raa = pb * g.gu + wn * sigma2;
  b.rbb = g.gu + sigma2;
  b.ree = g.ge + sigma2;
  b.rab = spb * g.gu;
  b.rbe = g.gue;
  b.rae = spb * g.gue;
  return b;
}

double kgr_determinant(const CovarianceBlocks& b) {
  const double log_abe = linalg::log_abs_det(b.abe());
  if (log_abe < std::log(1e-300)) {
    throw std::domain_error("degenerate configuration: det(R_abe) below 1e-300");
  }
  const double log_num = linalg::log_abs_det(b.ae()) + linalg::log_abs_det(b.be());
  return (log_num - log_abe - std::log(b.ree)) / std::log(2.0);
}

double kgr_closed_form(const VecC& w, const VecC& v, const CorrelationSet& corr, double pb,
                       double sigma2, int k) {
  const GainTriple g = gains(w, v, corr, k);
  const double wn = w.squaredNorm();
  const double s2 = sigma2;
  const double s4 = sigma2 * sigma2;
  const double cross = std::norm(g.gue);
  const double det_be = g.gu * g.ge + (g.gu + g.ge) * s2 + s4 - cross;
  const double det_ae = pb * g.gu * g.ge + (pb * g.gu + g.ge * wn) * s2 + wn * s4 - pb * cross;
  const double det_abe = ((pb + wn) * det_be - pb * s2 * (g.ge + s2)) * s2;
  if (!(det_abe > 1e-300)) {
    throw std::domain_error("degenerate configuration: det(R_abe) below 1e-300");
  }
  return std::log2(det_ae * det_be / (det_abe * (g.ge + s2)));
}

double min_kgr(const VecC& w, const VecC& v, const CorrelationSet& corr, double pb, double sigma2) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < corr.K; ++k) best = std::min(best, kgr_closed_form(w, v, corr, pb, sigma2, k));
  return best;
}

Lemma2Matrices lemma2_matrices(const CorrelationSet& corr) {
  Lemma2Matrices m;
  const MatC ri_tilde = corr.ri_tilde.cast<Complex>();
  const MatC eye = MatC::Identity(corr.N, corr.N);
  m.ru = corr.beta_r() * ri_tilde + (corr.beta_ab / corr.N) * eye;
  for (int k = 0; k < corr.K; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    m.rk.push_back(corr.beta_r_eve(k) * ri_tilde + (corr.beta_ak[kk] / corr.N) * eye);
    m.ris_cross.push_back(std::sqrt(corr.beta_r() * corr.beta_r_eve(k)) * corr.ris_cross_tilde[kk]);
    m.direct_cross.push_back(std::sqrt(corr.beta_ab * corr.beta_ak[kk]) *
                             corr.direct_cross_tilde[kk]);
  }
  return m;
}

double lemma2_objective(const VecC& wbar, const VecC& v, const CorrelationSet& corr, double sigma2,
                        int k) {
  check_dimensions(wbar, v, corr, k);
  const auto kk = static_cast<std::size_t>(k);
  const Lemma2Matrices m = lemma2_matrices(corr);
  const double s = wbar.dot(corr.rs * wbar).real();
  const double u = v.dot(m.ru * v).real();
  const Complex cross = s * v.dot(m.ris_cross[kk] * v) + wbar.dot(m.direct_cross[kk] * wbar);
  const double den = s * v.dot(m.rk[kk] * v).real() + sigma2;
  return s * u - std::norm(cross) / den;
}

}  // namespace riskg
