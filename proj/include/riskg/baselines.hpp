#pragma once

#include <random>
#include <string>

#include "riskg/bsum.hpp"

namespace riskg {

enum class BaselineKind {
  RandomW,
  RandomV,
  EigenW,
  EqualPhaseV,
  NoRis,
  IidDesignAtBs,   // random w, BSUM over v
  IidDesignAtRis,  // BSUM over w, random v
  ProjectedSubgradient,
  GridSearch,
};

std::string to_string(BaselineKind kind);

// |w|^2 = P_A exactly, direction uniform on the complex sphere.
VecC random_beamforming(int m, double pa, std::mt19937_64& rng);
// Unit-modulus entries with phases uniform on [0, 2 pi).
VecC random_reflection(int n, std::mt19937_64& rng);

// Transmit vector w with w^T R_S w^* = P_A lambda_max(R_S).
VecC eigen_beamforming(const MatC& rs, double pa);
VecC equal_phase_reflection(int n);

enum class StepRule {
  Diminishing,  // c / sqrt(t)
  Constant,
};

struct SubgradientOptions {
  int steps = 10000;
  double c = 0.1;  // step scale, relative to the feasible-set radius over the gradient norm
  StepRule rule = StepRule::Diminishing;
};

// Max-min subgradient ascent on min_k of `objective`: the active piece (smallest
// index on ties) supplies the gradient; the best iterate seen is returned.
// Works on a saddle problem (the BSUM surrogate) ...
VecR projected_subgradient(const SaddleProblem& sp, const VecR& init, const SubgradientOptions& opts = {});
// ... or on the real-domain objective over both blocks jointly.
RealPoint projected_subgradient(const LiftedProblem& lp, const RealPoint& init,
                                const SubgradientOptions& opts = {});

struct GridSearchResult {
  RealPoint point;
  double objective = 0.0;
  long long evaluated = 0;
};

// Exhaustive search for N <= 2, M <= 2. v runs over unit-modulus phases
// (`resolution` points per free element, with v_1 = 1 since the objective is
// invariant to a common phase); w runs over |w| = sqrt(P_A) directions
// parameterised by (a, phi) on a resolution x resolution grid.
GridSearchResult grid_search(const LiftedProblem& lp, int resolution);

// Exhaustive max_x min_k over a saddle problem with dim <= 6, used as the
// inner-solver oracle. Coarse grid followed by successive local refinement.
double saddle_grid_oracle(const SaddleProblem& sp, int resolution = 48, int levels = 6);

}  // namespace riskg
