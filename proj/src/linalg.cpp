#include "riskg/linalg.hpp"

#include <cmath>

namespace riskg {

double distance(const Position& a, const Position& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

namespace linalg {

namespace {

template <typename Matrix>
Matrix clamped_sqrt(const Matrix& a, double clamp) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("matrix square root: eigen-decomposition failed");
  }
  Eigen::VectorXd ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-9 * scale) {
      throw std::invalid_argument("matrix square root: input is not PSD");
    }
    ev(i) = ev(i) <= clamp ? 0.0 : std::sqrt(ev(i));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

MatC hermitian_sqrt(const MatC& a, double clamp) { return clamped_sqrt(a, clamp); }

MatR symmetric_sqrt(const MatR& a, double clamp) { return clamped_sqrt(a, clamp); }

double max_eigenvalue(const MatR& a) {
  const double scale = std::max(1e-300, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale) {
    Eigen::SelfAdjointEigenSolver<MatR> es(0.5 * (a + a.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
  }
  Eigen::EigenSolver<MatR> es(a, false);
  return es.eigenvalues().real().maxCoeff();
}

double min_eigenvalue_hermitian(const MatC& a) {
  Eigen::SelfAdjointEigenSolver<MatC> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

VecC dominant_eigenvector(const MatC& a) {
  Eigen::SelfAdjointEigenSolver<MatC> es(a);
  const Eigen::Index n = a.rows();
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double top = ev(n - 1);
  const double tol = 1e-10 * std::max(1.0, std::abs(top));
  Eigen::Index first = n - 1;
  while (first > 0 && top - ev(first - 1) <= tol) --first;
  const MatC basis = es.eigenvectors().rightCols(n - first);

  VecC v;
  if (basis.cols() == 1) {
    v = basis.col(0);
  } else {
    // Project canonical vectors e_0, e_1, ... until one has a usable component.
    for (Eigen::Index i = 0; i < n; ++i) {
      VecC e = VecC::Zero(n);
      e(i) = 1.0;
      v = basis * (basis.adjoint() * e);
      if (v.norm() > 1e-6) break;
    }
  }
  v.normalize();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(v(i)) > 1e-12) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return v;
}

double log_abs_det(const MatC& a) {
  Eigen::PartialPivLU<MatC> lu(a);
  const MatC& packed = lu.matrixLU();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < packed.rows(); ++i) acc += std::log(std::abs(packed(i, i)));
  return acc;
}

}  // namespace linalg
}  // namespace riskg
