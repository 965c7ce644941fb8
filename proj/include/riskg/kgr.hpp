#pragma once

#include "riskg/channel_model.hpp"

namespace riskg {

// Second-order statistics of the combined estimates h_a (Alice, after
// combining with w), h_b (Bob) and h_{e_k} (Eve antenna k, downlink).
struct CovarianceBlocks {
  double raa = 0.0;
  double rbb = 0.0;
  double ree = 0.0;
  Complex rab;
  Complex rbe;
  Complex rae;

  Eigen::Matrix2cd ae() const;   // [[R_aa, R_ae], [R_ea, R_ee]]
  Eigen::Matrix2cd be() const;   // [[R_bb, R_be], [R_eb, R_ee]]
  Eigen::Matrix3cd abe() const;  // full 3 x 3
};

struct GainTriple {
  double gu = 0.0;
  double ge = 0.0;
  Complex gue;
};

// g_u, g_e^k, g_ue^k for transmit vector w and reflection vector v.
GainTriple gains(const VecC& w, const VecC& v, const CorrelationSet& corr, int k);

CovarianceBlocks covariance_blocks(const VecC& w, const VecC& v, const CorrelationSet& corr,
                                   double pb, double sigma2, int k);

// log2 det(R_ae) det(R_be) / (det(R_abe) R_ee), in bits per probing round.
double kgr_determinant(const CovarianceBlocks& blocks);

// Closed-form rate from the gain triple; algebraically identical to
// kgr_determinant for equal noise variances.
double kgr_closed_form(const VecC& w, const VecC& v, const CorrelationSet& corr, double pb,
                       double sigma2, int k);

// min_k of kgr_closed_form, ties resolved to the smallest k.
double min_kgr(const VecC& w, const VecC& v, const CorrelationSet& corr, double pb, double sigma2);

// f_k(wbar, v) with wbar = conj(w): the conditional variance form whose
// max-min is equivalent to the max-min rate at unit-modulus v.
double lemma2_objective(const VecC& wbar, const VecC& v, const CorrelationSet& corr, double sigma2,
                        int k);

// The matrices entering f_k: R_u-bar, R_k-bar, and the scaled cross terms.
struct Lemma2Matrices {
  MatC ru;                     // beta_r R_I~ + (beta_ab / N) I
  std::vector<MatC> rk;        // beta_r^k R_I~ + (beta_ak / N) I
  std::vector<MatC> ris_cross; // sqrt(beta_r beta_r^k) R_bk^r~
  std::vector<MatC> direct_cross;  // sqrt(beta_ab beta_ak) R_bk^d~
};

Lemma2Matrices lemma2_matrices(const CorrelationSet& corr);

}  // namespace riskg
