#pragma once

#include <vector>

#include "riskg/types.hpp"

namespace riskg {

enum class ConstraintKind {
  Discs,  // (x_n, x_{n+N}) in the unit disc for every n; primal dimension 2N
  Ball,   // |x|_2 <= radius
};

// min_x max_{y in simplex} psi(x, y) = sum_k y_k h_k(x), with
//   h_k(x) = tau_k |x|^2 + P_k x + q_k.
//
// The BSUM surrogates are stored anchored at a point c:
//   h_k(x) = tau_k |x - c|^2 + g_k^T (x - c) + h0_k,
// which is the same quadratic but keeps the (small) gradient separate from the
// (possibly huge) curvature term, so nothing cancels when L |c| >> |g|.
// P and q are derived from the anchored data.
struct SaddleProblem {
  VecR tau;        // K, nonnegative
  MatR grad;       // K x dim, rows g_k
  VecR value;      // K, h0_k
  VecR center;     // dim
  ConstraintKind kind = ConstraintKind::Discs;
  double radius = 1.0;  // Ball only

  int K() const { return static_cast<int>(tau.size()); }
  int dim() const { return static_cast<int>(center.size()); }

  // Rows P_k = g_k - 2 tau_k c.
  MatR P() const;
  // q_k = h0_k - g_k^T c + tau_k |c|^2.
  VecR q() const;

  // h(x) for all k.
  VecR constraint_values(const VecR& x) const;

  // Plain (unanchored) form, c = 0.
  static SaddleProblem from_linear(VecR tau, MatR P, VecR q, ConstraintKind kind,
                                   double radius = 1.0);
};

struct SaddlePoint {
  VecR x;
  VecR y;
};

// Psi(z) = [grad_x psi; -grad_y psi].
SaddlePoint saddle_operator(const SaddleProblem& sp, const SaddlePoint& z);

// 2 max(1, R) |tau|_2 + max_k |p_k|_2 with R the largest feasible |x|_2
// (sqrt(N) for discs, the radius for the ball).
double lipschitz_constant(const SaddleProblem& sp);

double bregman_distance(const SaddlePoint& z, const SaddlePoint& zp);

void project_primal(VecR& x, ConstraintKind kind, double radius);

// Mirror maps of the Euclidean x entropy geometry.
SaddlePoint mirror_map(const SaddlePoint& z);          // [x; ln y + 1]
SaddlePoint inverse_mirror_map(const SaddlePoint& g);  // [x; exp(g - 1)] (unnormalised)

struct MirrorProxOptions {
  double tolerance = 1e-6;
  int max_iters = 20000;
  // Abort if the Bregman gap grows by this factor over `divergence_window` iterations
  // and ends above the first iteration's gap.
  double divergence_factor = 10.0;
  int divergence_window = 100;
  bool keep_trajectory = false;
};

struct MirrorProxResult {
  SaddlePoint solution;   // best of the ergodic average and the last iterate
  SaddlePoint ergodic;
  SaddlePoint last;
  int iterations = 0;
  bool converged = false;
  double objective = 0.0;  // max-min surrogate value at `solution`, i.e. -max_k h_k
  // Ergodic averages after each iteration (only with keep_trajectory).
  std::vector<VecR> ergodic_trajectory;
};

// min_k (-h_k(x)), the max-min objective the saddle problem encodes.
double surrogate_min(const SaddleProblem& sp, const VecR& x);

// z0.y defaults to uniform when empty. Throws SolverDivergence on detected blow-up.
MirrorProxResult mirror_prox_solve(const SaddleProblem& sp, const SaddlePoint& z0,
                                   const MirrorProxOptions& opts = {});

}  // namespace riskg
