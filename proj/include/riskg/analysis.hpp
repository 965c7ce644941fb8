#pragma once

#include "riskg/channel_model.hpp"

namespace riskg {

struct BoundsReport {
  double f_lower = 0.0;
  double f_upper = 0.0;
  double asymptote = 0.0;   // P_A ((1 + rho) / (1 - rho))^2, infinite at rho = 1
  double rho_one_limit = 0.0;  // P_A N_H N_V
  bool at_limit = false;    // rho == 1: both bounds set to the limit value
};

// Bounds on P_A lambda_max(R_h (x) R_v) for Toeplitz factors [R]_{ij} = rho^|i-j|.
BoundsReport upa_bounds(int nh, int nv, double rho, double pa);

struct LeakageInputs {
  double rho_k = 0.0;
  double lambda_max_rs = 0.0;   // lambda_max(R_S)
  double frob_ri_sq = 0.0;      // |R_I|_F^2
  double beta_r = 0.0;
  double beta_r_eve = 0.0;      // beta_r^k
  double beta_ab = 0.0;
  double beta_ak = 0.0;
  double sigma2 = 0.0;
  double pa = 1.0;
};

// Subtracted term of f_k at the eigen / equal-phase beamformers under the scalar
// cross-correlation model.
double leakage(const LeakageInputs& in);
LeakageInputs leakage_inputs(const CorrelationSet& corr, int k, double rho_k, double sigma2, double pa);

// w^T R_S w^* (beta_r v^H R_I~ v + beta_ab); the rate is monotone in it when Eve is independent.
double lemma3_quantity(const VecC& w, const VecC& v, const CorrelationSet& corr);

}  // namespace riskg
