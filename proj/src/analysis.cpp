#include "riskg/analysis.hpp"

#include <cmath>
#include <limits>

namespace riskg {

namespace {

double power(double base, int exp) {
  double out = 1.0;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

// Per-dimension factor of the lower bound: (n (1 - rho^2) - 2 rho (1 - rho^n)) / (n (1 - rho)^2),
// i.e. 1^T T 1 / n for the n x n Toeplitz factor.
double lower_factor(int n, double rho) {
  const double om = 1.0 - rho;
  return (n * (1.0 - rho * rho) - 2.0 * rho * (1.0 - power(rho, n))) / (n * om * om);
}

// Per-dimension factor of the upper bound: (1 + rho)(1 - rho^(n-1)) / (1 - rho), with the
// single-element factor equal to 1.
double upper_factor(int n, double rho) {
  if (n == 1) return 1.0;
  return (1.0 + rho) * (1.0 - power(rho, n - 1)) / (1.0 - rho);
}

}  // namespace

BoundsReport upa_bounds(int nh, int nv, double rho, double pa) {
  if (nh < 1 || nv < 1) throw std::invalid_argument("array dimensions must be positive");
  if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("rho must lie in [0, 1]");
  BoundsReport r;
  r.rho_one_limit = pa * nh * nv;
  if (rho == 1.0) {
    r.at_limit = true;
    r.f_lower = r.f_upper = r.rho_one_limit;
    r.asymptote = std::numeric_limits<double>::infinity();
    return r;
  }
  const double ratio = (1.0 + rho) / (1.0 - rho);
  r.asymptote = pa * ratio * ratio;
  r.f_lower = pa * lower_factor(nh, rho) * lower_factor(nv, rho);
  r.f_upper = rho == 0.0 ? pa : pa * upper_factor(nh, rho) * upper_factor(nv, rho);
  // At rho = 0 both factors are exactly one; avoid rounding in the products.
  if (rho == 0.0) r.f_lower = pa;
  return r;
}

double leakage(const LeakageInputs& in) {
  const double s = in.pa * in.lambda_max_rs;
  const double cross = in.frob_ri_sq * std::sqrt(in.beta_r * in.beta_r_eve) +
                       std::sqrt(in.beta_ab * in.beta_ak);
  const double den = s * (in.beta_r_eve * in.frob_ri_sq + in.beta_ak) + in.sigma2;
  return in.rho_k * in.rho_k * s * s * cross * cross / den;
}

LeakageInputs leakage_inputs(const CorrelationSet& corr, int k, double rho_k, double sigma2, double pa) {
  const auto kk = static_cast<std::size_t>(k);
  LeakageInputs in;
  in.rho_k = rho_k;
  Eigen::SelfAdjointEigenSolver<MatC> es(corr.rs, Eigen::EigenvaluesOnly);
  in.lambda_max_rs = es.eigenvalues().maxCoeff();
  in.frob_ri_sq = corr.ri.squaredNorm();
  in.beta_r = corr.beta_r();
  in.beta_r_eve = corr.beta_r_eve(k);
  in.beta_ab = corr.beta_ab;
  in.beta_ak = corr.beta_ak.at(kk);
  in.sigma2 = sigma2;
  in.pa = pa;
  return in;
}

double lemma3_quantity(const VecC& w, const VecC& v, const CorrelationSet& corr) {
  if (w.size() != corr.M || v.size() != corr.N) {
    throw std::invalid_argument("beamforming vectors do not match the correlation set");
  }
  const double s = (w.transpose() * corr.rs * w.conjugate())(0, 0).real();
  const double vri = v.dot(corr.ri_tilde.cast<Complex>() * v).real();
  return s * (corr.beta_r() * vri + corr.beta_ab);
}

}  // namespace riskg
