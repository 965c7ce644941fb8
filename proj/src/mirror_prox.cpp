#include "riskg/mirror_prox.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace riskg {

namespace {

constexpr double kEntropyFloor = 1e-300;

VecR uniform_simplex(int k) { return VecR::Constant(k, 1.0 / k); }

// y * exp(step), renormalised in the log domain so large exponents do not overflow.
VecR entropic_step(const VecR& y, const VecR& step) {
  VecR logs(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) logs(i) = std::log(std::max(y(i), kEntropyFloor)) + step(i);
  const double top = logs.maxCoeff();
  VecR out = (logs.array() - top).exp().matrix();
  out /= out.sum();
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = std::max(out(i), kEntropyFloor);
  return out / out.sum();
}

}  // namespace

MatR SaddleProblem::P() const {
  MatR p = grad;
  for (int k = 0; k < K(); ++k) p.row(k) -= 2.0 * tau(k) * center.transpose();
  return p;
}

VecR SaddleProblem::q() const {
  VecR out(K());
  const double cc = center.squaredNorm();
  for (int k = 0; k < K(); ++k) out(k) = value(k) - grad.row(k).dot(center) + tau(k) * cc;
  return out;
}

VecR SaddleProblem::constraint_values(const VecR& x) const {
  const VecR d = x - center;
  const double dd = d.squaredNorm();
  VecR out = grad * d + value;
  out += tau * dd;
  return out;
}

SaddleProblem SaddleProblem::from_linear(VecR tau, MatR P, VecR q, ConstraintKind kind,
                                         double radius) {
  SaddleProblem sp;
  sp.center = VecR::Zero(P.cols());
  sp.tau = std::move(tau);
  sp.grad = std::move(P);
  sp.value = std::move(q);
  sp.kind = kind;
  sp.radius = radius;
  return sp;
}

SaddlePoint saddle_operator(const SaddleProblem& sp, const SaddlePoint& z) {
  SaddlePoint out;
  out.x = 2.0 * sp.tau.dot(z.y) * (z.x - sp.center) + sp.grad.transpose() * z.y;
  out.y = -sp.constraint_values(z.x);
  return out;
}

double lipschitz_constant(const SaddleProblem& sp) {
  const double r = sp.kind == ConstraintKind::Discs ? std::sqrt(sp.dim() / 2.0) : sp.radius;
  const MatR p = sp.P();
  double pmax = 0.0;
  for (int k = 0; k < sp.K(); ++k) pmax = std::max(pmax, p.row(k).norm());
  return 2.0 * std::max(1.0, r) * sp.tau.norm() + pmax;
}

double bregman_distance(const SaddlePoint& z, const SaddlePoint& zp) {
  double d = 0.5 * (z.x - zp.x).squaredNorm();
  for (Eigen::Index k = 0; k < z.y.size(); ++k) {
    const double yk = z.y(k);
    const double ypk = std::max(zp.y(k), kEntropyFloor);
    if (yk > 0.0) d += yk * std::log(yk / ypk);
    d -= yk - zp.y(k);
  }
  return std::max(d, 0.0);
}

void project_primal(VecR& x, ConstraintKind kind, double radius) {
  if (kind == ConstraintKind::Ball) {
    const double n = x.norm();
    if (n > radius) x *= radius / n;
    return;
  }
  const Eigen::Index half = x.size() / 2;
  for (Eigen::Index i = 0; i < half; ++i) {
    const double n = std::hypot(x(i), x(half + i));
    if (n > 1.0) {
      x(i) /= n;
      x(half + i) /= n;
    }
  }
}

SaddlePoint mirror_map(const SaddlePoint& z) {
  SaddlePoint g{z.x, VecR(z.y.size())};
  for (Eigen::Index k = 0; k < z.y.size(); ++k) g.y(k) = std::log(std::max(z.y(k), kEntropyFloor)) + 1.0;
  return g;
}

SaddlePoint inverse_mirror_map(const SaddlePoint& g) {
  return {g.x, (g.y.array() - 1.0).exp().matrix()};
}

double surrogate_min(const SaddleProblem& sp, const VecR& x) {
  return -sp.constraint_values(x).maxCoeff();
}

MirrorProxResult mirror_prox_solve(const SaddleProblem& sp, const SaddlePoint& z0,
                                   const MirrorProxOptions& opts) {
  if (sp.K() < 1) throw std::invalid_argument("saddle problem needs at least one objective");
  if (z0.x.size() != sp.dim()) throw std::invalid_argument("initial point has the wrong dimension");

  SaddlePoint z{z0.x, z0.y.size() == sp.K() ? z0.y : uniform_simplex(sp.K())};
  project_primal(z.x, sp.kind, sp.radius);
  z.y = entropic_step(z.y, VecR::Zero(sp.K()));

  MirrorProxResult res;
  const double lv = lipschitz_constant(sp);
  if (!(lv > 0.0)) {
    // psi does not depend on x; any feasible x is optimal.
    res.solution = res.ergodic = res.last = z;
    res.converged = true;
    res.objective = surrogate_min(sp, z.x);
    return res;
  }
  const double alpha = 1.0 / (2.0 * lv);

  auto step = [&](const SaddlePoint& from, const SaddlePoint& dir) {
    SaddlePoint out;
    out.x = from.x - alpha * dir.x;
    project_primal(out.x, sp.kind, sp.radius);
    out.y = entropic_step(from.y, -alpha * dir.y);
    return out;
  };

  SaddlePoint sum{VecR::Zero(sp.dim()), VecR::Zero(sp.K())};
  std::deque<double> gaps;
  double first_gap = 0.0;
  int l = 0;
  while (l < opts.max_iters) {
    const SaddlePoint r = step(z, saddle_operator(sp, z));
    const SaddlePoint next = step(z, saddle_operator(sp, r));
    const double gap = bregman_distance(z, next);
    z = next;
    ++l;
    sum.x += z.x;
    sum.y += z.y;
    if (opts.keep_trajectory) res.ergodic_trajectory.push_back(sum.x / l);

    if (!std::isfinite(gap)) throw SolverDivergence("mirror-prox produced a non-finite iterate");
    if (gap <= opts.tolerance) {
      res.converged = true;
      break;
    }
    if (l == 1) first_gap = gap;
    gaps.push_back(gap);
    if (static_cast<int>(gaps.size()) > opts.divergence_window) {
      const double old = gaps.front();
      gaps.pop_front();
      // Near convergence the gap jitters by large factors at tiny magnitudes; a
      // wrong step size shows up as growth past where the run started.
      if (gap > opts.divergence_factor * old && gap > first_gap) {
        std::ostringstream msg;
        msg << "mirror-prox Bregman gap grew from " << old << " to " << gap << " within "
            << opts.divergence_window << " iterations (L_v = " << lv << ")";
        throw SolverDivergence(msg.str());
      }
    }
  }

  res.iterations = l;
  res.last = z;
  res.ergodic = {sum.x / std::max(l, 1), sum.y / std::max(l, 1)};
  if (l == 0) res.ergodic = z;
  project_primal(res.ergodic.x, sp.kind, sp.radius);  // rounding only; the average is feasible

  const double f_erg = surrogate_min(sp, res.ergodic.x);
  const double f_last = surrogate_min(sp, res.last.x);
  res.solution = f_last > f_erg ? res.last : res.ergodic;
  res.objective = std::max(f_erg, f_last);
  return res;
}

}  // namespace riskg
