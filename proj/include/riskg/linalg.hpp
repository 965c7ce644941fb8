#pragma once

#include "riskg/types.hpp"

namespace riskg::linalg {

// Principal square root of a Hermitian PSD matrix. Eigenvalues below `clamp`
// (in absolute value, after the sign check) are set to zero.
MatC hermitian_sqrt(const MatC& a, double clamp = 1e-12);
MatR symmetric_sqrt(const MatR& a, double clamp = 1e-12);

// Largest eigenvalue. Symmetric inputs go through the self-adjoint solver;
// anything else returns the largest real part of the spectrum.
double max_eigenvalue(const MatR& a);

double min_eigenvalue_hermitian(const MatC& a);

// Dominant eigenvector of a Hermitian matrix. Ties inside the top eigenspace
// are broken deterministically: the returned vector is the normalized
// projection of the first canonical basis vector with non-negligible
// component, phase-rotated so that its first nonzero entry is real positive.
VecC dominant_eigenvector(const MatC& a);

// log(|det A|) accumulated from LU pivots.
double log_abs_det(const MatC& a);

}  // namespace riskg::linalg
