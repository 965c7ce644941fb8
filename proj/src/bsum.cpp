#include "riskg/bsum.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "riskg/linalg.hpp"

namespace riskg {

using linalg::max_eigenvalue;

double QuadSurrogate::eval(const VecR& x) const {
  const VecR d = x - center;
  return value + grad.dot(d) - 0.5 * curvature * d.squaredNorm();
}

VecR QuadSurrogate::gradient(const VecR& x) const { return grad - curvature * (x - center); }

double curvature_v(const LiftedProblem& lp, const VecR& w, int k) {
  const LiftedEve& e = lp.eves.at(static_cast<std::size_t>(k));
  const double n = lp.N;
  const double s2 = lp.sigma2;
  const double mw = w.dot(lp.rs * w);
  const double qw = w.dot(e.q_direct * w);
  const double pw = w.dot(e.p_direct * w);
  const MatR qh = mw * e.q_ris;
  const MatR ph = mw * e.p_ris;
  const MatR qs = qh + qh.transpose();
  const MatR ps = ph + ph.transpose();

  const double qa = qw + n * max_eigenvalue(qh);
  const double pa = pw + n * max_eigenvalue(ph);
  const double t1 = 4.0 * (qa * qa + pa * pa) / (s2 * s2) * mw * mw * n *
                    max_eigenvalue(e.rk * e.rk);
  const double t2 = 2.0 * n * (max_eigenvalue(qh * qs) + max_eigenvalue(ph * ps));
  const double t3 = qa * max_eigenvalue(qs);
  const double t4 = pa * max_eigenvalue(ps);
  return std::max(n / s2 * (t1 + t2 + t3 + t4), kCurvatureFloor);
}

double curvature_w(const LiftedProblem& lp, const VecR& v, int k) {
  const LiftedEve& e = lp.eves.at(static_cast<std::size_t>(k));
  const double s2 = lp.sigma2;
  const double pa = lp.pa;
  const MatR qb = v.dot(e.q_ris * v) * lp.rs + e.q_direct;
  const MatR pb = v.dot(e.p_ris * v) * lp.rs + e.p_direct;
  const double mv = v.dot(e.rk * v);
  const MatR qs = qb + qb.transpose();
  const MatR ps = pb + pb.transpose();

  const double lq = max_eigenvalue(qb);
  const double lp_ = max_eigenvalue(pb);
  // The first and last summands are the same expression; both are kept.
  const double quad = max_eigenvalue(qb * qs + qb.transpose() * qs);
  const double t_cross = mv * mv * 4.0 * pa * pa * pa / (s2 * s2) *
                         max_eigenvalue(lp.rs * lp.rs) * (lq * lq + lp_ * lp_);
  const double sum = quad + lq * max_eigenvalue(qs) + t_cross + lp_ * max_eigenvalue(ps) + quad;
  return std::max(2.0 * pa / s2 * sum, kCurvatureFloor);
}

namespace {

QuadSurrogate make_surrogate(double l, const VecR& center, const VecR& grad, double value) {
  QuadSurrogate s;
  s.curvature = l;
  s.center = center;
  s.grad = grad;
  s.value = value;
  s.linear = grad + l * center;
  s.constant = value - grad.dot(center) - 0.5 * l * center.squaredNorm();
  return s;
}

}  // namespace

std::vector<QuadSurrogate> build_surrogate_v(const LiftedProblem& lp, const RealPoint& p) {
  std::vector<QuadSurrogate> out;
  for (int k = 0; k < lp.K; ++k) {
    const RealGradient g = gradient_real(lp, p, k);
    out.push_back(make_surrogate(curvature_v(lp, p.w, k), p.v, g.v, objective_real(lp, p, k)));
  }
  return out;
}

std::vector<QuadSurrogate> build_surrogate_w(const LiftedProblem& lp, const RealPoint& p) {
  std::vector<QuadSurrogate> out;
  for (int k = 0; k < lp.K; ++k) {
    const RealGradient g = gradient_real(lp, p, k);
    out.push_back(make_surrogate(curvature_w(lp, p.v, k), p.w, g.w, objective_real(lp, p, k)));
  }
  return out;
}

SaddleProblem saddle_from_surrogates(const std::vector<QuadSurrogate>& s, ConstraintKind kind,
                                     double radius) {
  const auto k = static_cast<Eigen::Index>(s.size());
  const Eigen::Index dim = s.front().center.size();
  SaddleProblem sp;
  sp.kind = kind;
  sp.radius = radius;
  sp.center = s.front().center;
  sp.tau.resize(k);
  sp.grad.resize(k, dim);
  sp.value.resize(k);
  // h_k = -s_k, so the saddle problem minimises the worst negated surrogate.
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& si = s[static_cast<std::size_t>(i)];
    sp.tau(i) = 0.5 * si.curvature;
    sp.grad.row(i) = -si.grad.transpose();
    sp.value(i) = -si.value;
  }
  return sp;
}

RealPoint default_init(const LiftedProblem& lp, const MatC& rs) {
  const VecC wbar = std::sqrt(lp.pa) * linalg::dominant_eigenvector(rs);
  return {lift_vector(wbar), lift_vector(VecC::Ones(lp.N))};
}

RealPoint random_init(const LiftedProblem& lp, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  VecC w(lp.M);
  for (int i = 0; i < lp.M; ++i) w(i) = Complex(gauss(rng), gauss(rng));
  w *= std::sqrt(lp.pa) / w.norm();
  VecC v(lp.N);
  for (int i = 0; i < lp.N; ++i) v(i) = std::polar(1.0, phase(rng));
  return to_real_point(w, v);
}

namespace {

VecR sample_discs(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  VecR x(2 * n);
  for (int i = 0; i < n; ++i) {
    const double r = std::sqrt(u(rng));
    const double a = 2.0 * std::numbers::pi * u(rng);
    x(i) = r * std::cos(a);
    x(n + i) = r * std::sin(a);
  }
  return x;
}

VecR sample_ball(int dim, double radius, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  VecR x(dim);
  for (int i = 0; i < dim; ++i) x(i) = gauss(rng);
  return x * (radius * std::pow(u(rng), 1.0 / dim) / x.norm());
}

struct MinorantStats {
  double violation = 0.0;
  double tangency = 0.0;
  double gradient = 0.0;
};

MinorantStats check_block(const LiftedProblem& lp, const RealPoint& at,
                          const std::vector<QuadSurrogate>& s, bool v_block, int samples,
                          std::mt19937_64& rng) {
  MinorantStats st;
  for (int k = 0; k < lp.K; ++k) {
    const auto& sk = s[static_cast<std::size_t>(k)];
    const double f0 = objective_real(lp, at, k);
    const double scale = std::max(std::abs(f0), 1e-300);
    const RealGradient g = gradient_real(lp, at, k);
    const VecR& gk = v_block ? g.v : g.w;
    const VecR& c = v_block ? at.v : at.w;
    st.tangency = std::max(st.tangency, std::abs(sk.eval(c) - f0) / scale);
    st.gradient = std::max(st.gradient,
                           (sk.gradient(c) - gk).norm() / std::max(gk.norm(), 1e-300));
    for (int i = 0; i < samples; ++i) {
      RealPoint x = at;
      if (v_block) {
        x.v = sample_discs(lp.N, rng);
      } else {
        x.w = sample_ball(2 * lp.M, std::sqrt(lp.pa), rng);
      }
      const double gap = (sk.eval(v_block ? x.v : x.w) - objective_real(lp, x, k)) / scale;
      st.violation = std::max(st.violation, gap);
    }
  }
  return st;
}

}  // namespace

BsumResult bsum_solve(const LiftedProblem& lp, const RealPoint& init, const BsumOptions& opts) {
  if (!(opts.eps0 > 0.0)) throw std::invalid_argument("eps0 must be positive");
  if (!is_feasible(lp, init, 1e-9)) throw std::invalid_argument("BSUM init is infeasible");

  using clock = std::chrono::steady_clock;
  std::mt19937_64 check_rng(opts.check_seed);
  BsumResult res;
  RealPoint x = init;
  project_primal(x.w, ConstraintKind::Ball, std::sqrt(lp.pa));
  project_primal(x.v, ConstraintKind::Discs, 1.0);

  {
    BsumIteration it0;
    it0.per_eve = objectives_real(lp, x);
    it0.objective = min_objective(lp, x);
    res.trace.push_back(it0);
  }
  double r_prev = res.trace.front().objective;

  for (int i = 1; i <= opts.max_outer; ++i) {
    const auto t0 = clock::now();
    BsumIteration it;
    it.iteration = i;

    // One block update: build the minorants, solve the max-min surrogate, and keep
    // the result only if the true objective does not go down.
    auto update = [&](bool v_block, int& inner_iters, bool& inner_ok, bool& rejected) {
      const auto s = v_block ? build_surrogate_v(lp, x) : build_surrogate_w(lp, x);
      if (opts.check_minorant) {
        const MinorantStats st = check_block(lp, x, s, v_block, opts.minorant_samples, check_rng);
        it.minorant_violation = std::max(it.minorant_violation, st.violation);
        it.tangency_error = std::max(it.tangency_error, st.tangency);
        it.gradient_error = std::max(it.gradient_error, st.gradient);
      }
      const SaddleProblem sp = v_block
                                   ? saddle_from_surrogates(s, ConstraintKind::Discs)
                                   : saddle_from_surrogates(s, ConstraintKind::Ball, std::sqrt(lp.pa));
      const MirrorProxResult mp = mirror_prox_solve(sp, {sp.center, VecR()}, opts.inner);
      inner_iters = mp.iterations;
      inner_ok = mp.converged;
      RealPoint cand = x;
      (v_block ? cand.v : cand.w) = mp.solution.x;
      const double before = min_objective(lp, x);
      if (surrogate_min(sp, mp.solution.x) >= surrogate_min(sp, sp.center) &&
          min_objective(lp, cand) >= before) {
        x = cand;
      } else {
        rejected = true;
      }
    };

    if (opts.update_v) update(true, it.inner_iters_v, it.inner_converged_v, it.rejected_v);
    if (opts.update_w) update(false, it.inner_iters_w, it.inner_converged_w, it.rejected_w);

    it.per_eve = objectives_real(lp, x);
    it.objective = min_objective(lp, x);
    it.milliseconds = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    res.trace.push_back(it);
    res.iterations = i;

    const double scale = std::max(std::abs(r_prev), 1e-300);
    if (it.objective < r_prev - opts.monotone_slack * scale) {
      std::ostringstream msg;
      msg << "BSUM objective decreased at iteration " << i << ": " << r_prev << " -> "
          << it.objective;
      throw SolverDivergence(msg.str());
    }
    const bool done = std::abs(it.objective - r_prev) <= opts.eps0 * scale;
    r_prev = it.objective;
    if (done) {
      res.converged = true;
      break;
    }
  }
  res.point = x;
  return res;
}

}  // namespace riskg
