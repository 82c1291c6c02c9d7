#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "qconfine/numerics/error.hpp"

namespace qconfine::numerics {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Ascending eigenvalues with orthonormal eigenvectors as columns.
struct EigenDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;
};

/// Full eigendecomposition of a dense symmetric matrix (Householder
/// tridiagonalization followed by implicit-shift QR).
inline EigenDecomposition sym_eig(const Matrix& a) {
  require(a.rows() == a.cols(), ErrorCode::invalid_argument, "sym_eig: matrix must be square");
  const double scale = a.cwiseAbs().maxCoeff();
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  require(asym <= 1e-12 * std::max(scale, 1e-300), ErrorCode::invalid_argument,
          "sym_eig: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  require(solver.info() == Eigen::Success, ErrorCode::internal, "sym_eig: no convergence");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace qconfine::numerics
