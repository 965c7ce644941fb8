#include "riskg/lift.hpp"

#include <limits>

#include "riskg/kgr.hpp"

namespace riskg {

MatR lift_matrix(const MatC& a) {
  const Eigen::Index r = a.rows();
  const Eigen::Index c = a.cols();
  MatR out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = a.real();
  out.topRightCorner(r, c) = -a.imag();
  out.bottomLeftCorner(r, c) = a.imag();
  out.bottomRightCorner(r, c) = a.real();
  return out;
}

MatR lift_hermitian_part(const MatC& a) { return lift_matrix(0.5 * (a + a.adjoint())); }

MatR lift_skew_part(const MatC& a) {
  const MatC k = (a - a.adjoint()) / Complex(0.0, 2.0);
  return lift_matrix(k);
}

VecR lift_vector(const VecC& x) {
  VecR out(2 * x.size());
  out << x.real(), x.imag();
  return out;
}

VecC unlift_vector(const VecR& x) {
  const Eigen::Index n = x.size() / 2;
  VecC out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = Complex(x(i), x(n + i));
  return out;
}

LiftedProblem lift(const CorrelationSet& corr, double pa, double sigma2) {
  const Lemma2Matrices m = lemma2_matrices(corr);
  LiftedProblem lp;
  lp.M = corr.M;
  lp.N = corr.N;
  lp.K = corr.K;
  lp.rs = lift_matrix(corr.rs);
  lp.ru = lift_matrix(m.ru);
  lp.sigma2 = sigma2;
  lp.pa = pa;
  for (int k = 0; k < corr.K; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    LiftedEve e;
    e.rk = lift_matrix(m.rk[kk]);
    e.q_ris = lift_hermitian_part(m.ris_cross[kk]);
    e.p_ris = lift_skew_part(m.ris_cross[kk]);
    e.q_direct = lift_hermitian_part(m.direct_cross[kk]);
    e.p_direct = lift_skew_part(m.direct_cross[kk]);
    lp.eves.push_back(std::move(e));
  }
  return lp;
}

bool is_feasible(const LiftedProblem& lp, const RealPoint& p, double tol) {
  if (p.w.size() != 2 * lp.M || p.v.size() != 2 * lp.N) return false;
  if (p.w.squaredNorm() > lp.pa * (1.0 + tol)) return false;
  for (int n = 0; n < lp.N; ++n) {
    if (p.v(n) * p.v(n) + p.v(lp.N + n) * p.v(lp.N + n) > 1.0 + tol) return false;
  }
  return true;
}

RealPoint to_real_point(const VecC& w, const VecC& v) {
  return {lift_vector(w.conjugate()), lift_vector(v)};
}

VecC transmit_vector(const RealPoint& p) { return unlift_vector(p.w).conjugate(); }

VecC reflection_vector(const RealPoint& p) { return unlift_vector(p.v); }

ObjectiveTerms objective_terms(const LiftedProblem& lp, const RealPoint& p, int k) {
  const LiftedEve& e = lp.eves.at(static_cast<std::size_t>(k));
  ObjectiveTerms t;
  t.mw = p.w.dot(lp.rs * p.w);
  t.uv = p.v.dot(lp.ru * p.v);
  t.kv = p.v.dot(e.rk * p.v);
  t.qr = p.v.dot(e.q_ris * p.v);
  t.pr = p.v.dot(e.p_ris * p.v);
  t.qd = p.w.dot(e.q_direct * p.w);
  t.pd = p.w.dot(e.p_direct * p.w);
  return t;
}

double objective_real(const LiftedProblem& lp, const RealPoint& p, int k) {
  const ObjectiveTerms t = objective_terms(lp, p, k);
  const double den = t.mw * t.kv + lp.sigma2;
  const double a = t.a();
  const double b = t.b();
  return t.mw * t.uv - (a * a + b * b) / den;
}

std::vector<double> objectives_real(const LiftedProblem& lp, const RealPoint& p) {
  std::vector<double> out(static_cast<std::size_t>(lp.K));
  for (int k = 0; k < lp.K; ++k) out[static_cast<std::size_t>(k)] = objective_real(lp, p, k);
  return out;
}

double min_objective(const LiftedProblem& lp, const RealPoint& p, int* argmin) {
  double best = std::numeric_limits<double>::infinity();
  int best_k = 0;
  for (int k = 0; k < lp.K; ++k) {
    const double f = objective_real(lp, p, k);
    if (f < best) {
      best = f;
      best_k = k;
    }
  }
  if (argmin != nullptr) *argmin = best_k;
  return best;
}

RealGradient gradient_real(const LiftedProblem& lp, const RealPoint& p, int k) {
  const LiftedEve& e = lp.eves.at(static_cast<std::size_t>(k));
  const ObjectiveTerms t = objective_terms(lp, p, k);
  const double den = t.mw * t.kv + lp.sigma2;
  const double a = t.a();
  const double b = t.b();
  const double num = a * a + b * b;

  // All lifted matrices are symmetric, so d(x^T A x)/dx = 2 A x.
  const VecR rs_w = 2.0 * (lp.rs * p.w);
  const VecR ru_v = 2.0 * (lp.ru * p.v);
  const VecR rk_v = 2.0 * (e.rk * p.v);
  const VecR qr_v = 2.0 * (e.q_ris * p.v);
  const VecR pr_v = 2.0 * (e.p_ris * p.v);
  const VecR qd_w = 2.0 * (e.q_direct * p.w);
  const VecR pd_w = 2.0 * (e.p_direct * p.w);

  const double ratio = num / (den * den);
  RealGradient g;
  g.v = t.mw * ru_v - (2.0 * a * t.mw * qr_v + 2.0 * b * t.mw * pr_v) / den +
        ratio * t.mw * rk_v;
  g.w = t.uv * rs_w - (2.0 * a * (t.qr * rs_w + qd_w) + 2.0 * b * (t.pr * rs_w + pd_w)) / den +
        ratio * t.kv * rs_w;
  return g;
}

}  // namespace riskg
