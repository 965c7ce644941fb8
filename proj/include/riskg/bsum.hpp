#pragma once

#include <cstdint>
#include <vector>

#include "riskg/lift.hpp"
#include "riskg/mirror_prox.hpp"

namespace riskg {

// Concave quadratic minorant s(x) = -L/2 |x|^2 + linear^T x + constant of one
// f~_k in one block, touching at `center`. Values are evaluated in the
// anchored form f + g^T (x - c) - L/2 |x - c|^2, which is the same function
// but does not lose g when L |c| dwarfs it.
struct QuadSurrogate {
  double curvature = 0.0;
  VecR linear;
  double constant = 0.0;

  VecR center;
  VecR grad;
  double value = 0.0;

  double eval(const VecR& x) const;
  VecR gradient(const VecR& x) const;
};

// Curvature bound for the v block at the current w (floored at 1e-12).
double curvature_v(const LiftedProblem& lp, const VecR& w, int k);
// Curvature bound for the w block at the current v (floored at 1e-12).
double curvature_w(const LiftedProblem& lp, const VecR& v, int k);

constexpr double kCurvatureFloor = 1e-12;

std::vector<QuadSurrogate> build_surrogate_v(const LiftedProblem& lp, const RealPoint& p);
std::vector<QuadSurrogate> build_surrogate_w(const LiftedProblem& lp, const RealPoint& p);

// max_x min_k s_k(x) as a saddle problem over the given constraint set.
SaddleProblem saddle_from_surrogates(const std::vector<QuadSurrogate>& s, ConstraintKind kind,
                                     double radius = 1.0);

// Closed-form start: w = sqrt(P_A) u_max(R_S), v = 1.
RealPoint default_init(const LiftedProblem& lp, const MatC& rs);
RealPoint random_init(const LiftedProblem& lp, std::mt19937_64& rng);

struct BsumOptions {
  double eps0 = 1e-4;     // relative: |R_i - R_{i-1}| <= eps0 |R_{i-1}|
  int max_outer = 200;
  double monotone_slack = 1e-8;  // relative
  bool update_v = true;
  bool update_w = true;
  MirrorProxOptions inner;

  // Test mode: sample the minorant property at random feasible points every iteration.
  bool check_minorant = false;
  int minorant_samples = 10;
  std::uint64_t check_seed = 12345;
};

struct BsumIteration {
  int iteration = 0;
  double objective = 0.0;  // min_k f~_k
  std::vector<double> per_eve;
  int inner_iters_v = 0;
  int inner_iters_w = 0;
  bool inner_converged_v = true;
  bool inner_converged_w = true;
  // An inner solution that would have lowered the true objective is discarded.
  bool rejected_v = false;
  bool rejected_w = false;
  double milliseconds = 0.0;

  // Test mode diagnostics (relative to |f~_k| at the touch point).
  double minorant_violation = 0.0;  // max over samples and k of (s_k - f~_k) / scale
  double tangency_error = 0.0;      // max_k |s_k(c) - f~_k(c)| / scale
  double gradient_error = 0.0;      // max_k |grad s_k(c) - grad f~_k(c)| / |grad f~_k(c)|
};

struct BsumResult {
  RealPoint point;
  std::vector<BsumIteration> trace;  // trace[0] is the initial point
  bool converged = false;
  int iterations = 0;
};

// Throws SolverDivergence if the objective drops by more than the slack.
BsumResult bsum_solve(const LiftedProblem& lp, const RealPoint& init, const BsumOptions& opts = {});

}  // namespace riskg
