#pragma once

#include <vector>

#include "riskg/channel_model.hpp"

namespace riskg {

// [[Re A, -Im A], [Im A, Re A]]. For Hermitian A and x~ = [Re x; Im x],
// x~^T lift(A) x~ = x^H A x.
MatR lift_matrix(const MatC& a);
// Lift of the Hermitian part (A + A^H) / 2: its form gives Re(x^H A x).
MatR lift_hermitian_part(const MatC& a);
// Lift of (A - A^H) / (2j): its form gives Im(x^H A x).
MatR lift_skew_part(const MatC& a);

VecR lift_vector(const VecC& x);
VecC unlift_vector(const VecR& x);

// Per-Eve blocks of the real-domain objective.
struct LiftedEve {
  MatR rk;        // 2N x 2N
  MatR q_ris;     // 2N x 2N, Hermitian part of the RIS cross term
  MatR p_ris;     // 2N x 2N, skew part
  MatR q_direct;  // 2M x 2M
  MatR p_direct;  // 2M x 2M
};

struct LiftedProblem {
  int M = 0;
  int N = 0;
  int K = 0;
  MatR rs;  // 2M x 2M
  MatR ru;  // 2N x 2N
  std::vector<LiftedEve> eves;
  double sigma2 = 0.0;
  double pa = 0.0;
};

// Stacked real coordinates: w = [Re wbar; Im wbar] (wbar = conj of the
// transmit vector), v = [Re v; Im v].
struct RealPoint {
  VecR w;
  VecR v;
};

LiftedProblem lift(const CorrelationSet& corr, double pa, double sigma2);

// Feasibility: |w|^2 <= P_A and v_n^2 + v_{n+N}^2 <= 1 for all n, with `tol` slack.
bool is_feasible(const LiftedProblem& lp, const RealPoint& p, double tol = 1e-12);

// RealPoint from complex (w, v), where w is the transmit vector (not its conjugate).
RealPoint to_real_point(const VecC& w, const VecC& v);
VecC transmit_vector(const RealPoint& p);
VecC reflection_vector(const RealPoint& p);

// Quadratic forms the objective is built from. Computing them once per point
// lets the objective, gradient and surrogate builders share the work.
struct ObjectiveTerms {
  double mw = 0.0;   // w^T R_S w
  double uv = 0.0;   // v^T R_u v
  double kv = 0.0;   // v^T R_k v
  double qr = 0.0;   // v^T Q_k^r v
  double pr = 0.0;   // v^T P_k^r v
  double qd = 0.0;   // w^T Q_k^d w
  double pd = 0.0;   // w^T P_k^d w
  double a() const { return mw * qr + qd; }
  double b() const { return mw * pr + pd; }
};

ObjectiveTerms objective_terms(const LiftedProblem& lp, const RealPoint& p, int k);

double objective_real(const LiftedProblem& lp, const RealPoint& p, int k);
std::vector<double> objectives_real(const LiftedProblem& lp, const RealPoint& p);

// min_k f~_k; `argmin` (optional) receives the smallest minimizing index.
double min_objective(const LiftedProblem& lp, const RealPoint& p, int* argmin = nullptr);

struct RealGradient {
  VecR w;
  VecR v;
};

RealGradient gradient_real(const LiftedProblem& lp, const RealPoint& p, int k);

}  // namespace riskg
