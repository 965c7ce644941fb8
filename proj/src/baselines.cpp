#include "riskg/baselines.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "riskg/linalg.hpp"

namespace riskg {

std::string to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::RandomW: return "random_w";
    case BaselineKind::RandomV: return "random_v";
    case BaselineKind::EigenW: return "eigen_w";
    case BaselineKind::EqualPhaseV: return "equal_phase_v";
    case BaselineKind::NoRis: return "no_ris";
    case BaselineKind::IidDesignAtBs: return "iid_design_at_bs";
    case BaselineKind::IidDesignAtRis: return "iid_design_at_ris";
    case BaselineKind::ProjectedSubgradient: return "projected_subgradient";
    case BaselineKind::GridSearch: return "grid_search";
  }
  return "unknown";
}

VecC random_beamforming(int m, double pa, std::mt19937_64& rng) {
  if (m < 1) throw std::invalid_argument("need at least one antenna");
  std::normal_distribution<double> gauss;
  VecC w(m);
  for (int i = 0; i < m; ++i) w(i) = Complex(gauss(rng), gauss(rng));
  return w * (std::sqrt(pa) / w.norm());
}

VecC random_reflection(int n, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("need at least one RIS element");
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  VecC v(n);
  for (int i = 0; i < n; ++i) v(i) = std::polar(1.0, phase(rng));
  return v;
}

VecC eigen_beamforming(const MatC& rs, double pa) {
  // The rate sees w through w^T R_S w^*, so the transmit vector is the conjugate
  // of the scaled eigenvector.
  return (std::sqrt(pa) * linalg::dominant_eigenvector(rs)).conjugate();
}

VecC equal_phase_reflection(int n) { return VecC::Ones(n); }

namespace {

double feasible_radius(ConstraintKind kind, double radius, Eigen::Index dim) {
  return kind == ConstraintKind::Discs ? std::sqrt(dim / 2.0) : radius;
}

double step_size(const SubgradientOptions& o, int t, double radius) {
  const double base = o.c * radius;
  return o.rule == StepRule::Diminishing ? base / std::sqrt(static_cast<double>(t)) : base;
}

// Ascend along g (normalised), then project.
void ascend(VecR& x, const VecR& g, double step, ConstraintKind kind, double radius) {
  const double n = g.norm();
  if (n > 0.0) x += (step / n) * g;
  project_primal(x, kind, radius);
}

}  // namespace

VecR projected_subgradient(const SaddleProblem& sp, const VecR& init, const SubgradientOptions& opts) {
  VecR x = init;
  project_primal(x, sp.kind, sp.radius);
  VecR best = x;
  double best_val = surrogate_min(sp, x);
  const double r = feasible_radius(sp.kind, sp.radius, x.size());
  for (int t = 1; t <= opts.steps; ++t) {
    const VecR h = sp.constraint_values(x);
    Eigen::Index k = 0;
    h.maxCoeff(&k);  // first maximiser = smallest index
    // s_k = -h_k, so its gradient is -(2 tau_k (x - c) + g_k).
    const VecR g = -(2.0 * sp.tau(k) * (x - sp.center) + sp.grad.row(k).transpose());
    ascend(x, g, step_size(opts, t, r), sp.kind, sp.radius);
    const double val = surrogate_min(sp, x);
    if (val > best_val) {
      best_val = val;
      best = x;
    }
  }
  return best;
}

RealPoint projected_subgradient(const LiftedProblem& lp, const RealPoint& init,
                                const SubgradientOptions& opts) {
  RealPoint x = init;
  const double rw = std::sqrt(lp.pa);
  project_primal(x.w, ConstraintKind::Ball, rw);
  project_primal(x.v, ConstraintKind::Discs, 1.0);
  RealPoint best = x;
  double best_val = min_objective(lp, x);
  const double rv = std::sqrt(static_cast<double>(lp.N));
  for (int t = 1; t <= opts.steps; ++t) {
    int k = 0;
    min_objective(lp, x, &k);
    const RealGradient g = gradient_real(lp, x, k);
    ascend(x.v, g.v, step_size(opts, t, rv), ConstraintKind::Discs, 1.0);
    ascend(x.w, g.w, step_size(opts, t, rw), ConstraintKind::Ball, rw);
    const double val = min_objective(lp, x);
    if (val > best_val) {
      best_val = val;
      best = x;
    }
  }
  return best;
}

GridSearchResult grid_search(const LiftedProblem& lp, int resolution) {
  if (lp.N > 2 || lp.M > 2) throw std::invalid_argument("grid search supports N <= 2 and M <= 2 only");
  if (resolution < 2) throw std::invalid_argument("grid resolution must be at least 2");
  const long long v_count = lp.N == 2 ? resolution : 1;
  const long long w_count = lp.M == 2 ? static_cast<long long>(resolution + 1) * resolution : 1;
  if (v_count * w_count > 10'000'000LL) throw std::invalid_argument("grid too large");

  const double two_pi = 2.0 * std::numbers::pi;
  const double amp = std::sqrt(lp.pa);
  GridSearchResult best;
  best.objective = -std::numeric_limits<double>::infinity();

  VecC v(lp.N);
  VecC wbar(lp.M);
  for (long long iv = 0; iv < v_count; ++iv) {
    v(0) = 1.0;
    if (lp.N == 2) v(1) = std::polar(1.0, two_pi * static_cast<double>(iv) / resolution);
    for (long long iw = 0; iw < w_count; ++iw) {
      if (lp.M == 2) {
        const long long ia = iw / resolution;
        const long long ip = iw % resolution;
        const double a = 0.5 * std::numbers::pi * static_cast<double>(ia) / resolution;
        const double phi = two_pi * static_cast<double>(ip) / resolution;
        wbar(0) = amp * std::cos(a);
        wbar(1) = amp * std::sin(a) * std::polar(1.0, phi);
      } else {
        wbar(0) = amp;
      }
      const RealPoint p{lift_vector(wbar), lift_vector(v)};
      const double f = min_objective(lp, p);
      ++best.evaluated;
      if (f > best.objective) {
        best.objective = f;
        best.point = p;
      }
    }
  }
  return best;
}

namespace {

// max_x sum_k y_k s_k(x) over the constraint set, in closed form: the weighted
// surrogate is an isotropic concave quadratic, so its constrained maximiser is
// the unconstrained one pulled radially onto each disc (or the ball).
double weighted_max(const SaddleProblem& sp, const VecR& y) {
  const double a = 2.0 * sp.tau.dot(y);  // curvature of sum y_k h_k
  const VecR b = sp.grad.transpose() * y;
  // minimise a/2 |x - c|^2 + b^T (x - c)  <=>  x = c - b / a, projected.
  VecR x;
  if (a > 0.0) {
    x = sp.center - b / a;
    project_primal(x, sp.kind, sp.radius);
  } else {
    // Linear: push every block to the boundary against b.
    x = -b;
    if (sp.kind == ConstraintKind::Ball) {
      if (x.norm() > 0.0) x *= sp.radius / x.norm();
    } else {
      const Eigen::Index half = x.size() / 2;
      for (Eigen::Index i = 0; i < half; ++i) {
        const double n = std::hypot(x(i), x(half + i));
        if (n > 0.0) {
          x(i) /= n;
          x(half + i) /= n;
        }
      }
    }
  }
  return -(sp.constraint_values(x).dot(y));
}

}  // namespace

double saddle_grid_oracle(const SaddleProblem& sp, int resolution, int levels) {
  const int k = sp.K();
  if (k < 1 || k > 3) throw std::invalid_argument("grid oracle supports 1 <= K <= 3");
  if (sp.dim() > 6) throw std::invalid_argument("grid oracle supports dim <= 6");
  if (k == 1) return weighted_max(sp, VecR::Ones(1));

  // The max-min value equals min over the simplex of the dual function, which is
  // convex in y; a grid with zoom-in refinement locates its minimum.
  const int free = k - 1;
  std::vector<double> lo(free, 0.0), hi(free, 1.0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_t(free, 1.0 / k);
  VecR y(k);
  for (int level = 0; level < levels; ++level) {
    std::vector<double> cell(free);
    for (int d = 0; d < free; ++d) cell[d] = (hi[d] - lo[d]) / resolution;
    const int n1 = resolution + 1;
    const int n2 = free == 2 ? resolution + 1 : 1;
    for (int i = 0; i < n1; ++i) {
      for (int j = 0; j < n2; ++j) {
        const double t1 = lo[0] + i * cell[0];
        const double t2 = free == 2 ? lo[1] + j * cell[1] : 0.0;
        if (t1 < 0.0 || t2 < 0.0 || t1 + t2 > 1.0 + 1e-15) continue;
        y(0) = t1;
        if (free == 2) y(1) = t2;
        y(k - 1) = std::max(0.0, 1.0 - t1 - t2);
        const double val = weighted_max(sp, y);
        if (val < best) {
          best = val;
          best_t[0] = t1;
          if (free == 2) best_t[1] = t2;
        }
      }
    }
    for (int d = 0; d < free; ++d) {
      lo[d] = std::max(0.0, best_t[d] - 2.0 * cell[d]);
      hi[d] = std::min(1.0, best_t[d] + 2.0 * cell[d]);
    }
  }
  return best;
}

}  // namespace riskg
