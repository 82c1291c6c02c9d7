#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "qconfine/dw/hamiltonian.hpp"

namespace qconfine::dw {

/// Eigenpairs of a double-well Hamiltonian in the oscillator basis.
/// Column n of `coeffs` holds b_m^n for state n.
struct BasisSolution {
  PotentialSpec spec;
  double sigma = 0.0;
  int n_basis = 0;
  numerics::Vector energies;
  numerics::Matrix coeffs;
  bool parity_split = false;
  bool converged = true;
  std::string warning;

  int size() const { return n_basis; }
};

namespace detail {

inline void fix_sign(numerics::Matrix& vecs) {
  for (Eigen::Index c = 0; c < vecs.cols(); ++c) {
    Eigen::Index imax = 0;
    vecs.col(c).cwiseAbs().maxCoeff(&imax);
    if (vecs(imax, c) < 0.0) vecs.col(c) *= -1.0;
  }
}

inline BasisSolution diagonalize(const PotentialSpec& spec, int n_basis) {
  BasisSolution sol;
  sol.spec = spec;
  sol.n_basis = n_basis;
  sol.sigma = optimal_sigma(spec.alpha, spec.beta, n_basis - 1, Parity::none);
  const numerics::Matrix h = build_hamiltonian(spec, sol.sigma, n_basis);
  if (!spec.symmetric()) {
    auto e = numerics::sym_eig(h);
    sol.energies = e.eigenvalues;
    sol.coeffs = e.eigenvectors;
    fix_sign(sol.coeffs);
    return sol;
  }

  // gamma = 0: even and odd basis functions never couple.
  sol.parity_split = true;
  std::vector<double> energies;
  std::vector<numerics::Vector> vectors;
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<int> idx;
    for (int m = parity; m < n_basis; m += 2) idx.push_back(m);
    const int k = static_cast<int>(idx.size());
    numerics::Matrix block(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) block(i, j) = h(idx[i], idx[j]);
    auto e = numerics::sym_eig(block);
    for (int c = 0; c < k; ++c) {
      numerics::Vector full = numerics::Vector::Zero(n_basis);
      for (int i = 0; i < k; ++i) full(idx[i]) = e.eigenvectors(i, c);
      energies.push_back(e.eigenvalues(c));
      vectors.push_back(std::move(full));
    }
  }
  std::vector<int> order(energies.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return energies[a] < energies[b]; });
  sol.energies.resize(n_basis);
  sol.coeffs.resize(n_basis, n_basis);
  for (int n = 0; n < n_basis; ++n) {
    sol.energies(n) = energies[order[n]];
    sol.coeffs.col(n) = vectors[order[n]];
  }
  fix_sign(sol.coeffs);
  return sol;
}

}  // namespace detail

/// Diagonalizes the Hamiltonian at the trace-optimal sigma. For gamma = 0
/// the even and odd sectors are solved separately. The result is compared
/// against a run with 20 more basis functions; if any of the lowest ten
/// energies moves by more than 1e-8 relative, `converged` is cleared and
/// `warning` explains why.
inline BasisSolution solve(const PotentialSpec& spec, int n_basis = 100, bool check_convergence = true) {
  require(spec.alpha > 0.0, ErrorCode::invalid_argument, "solve: alpha must be positive");
  require(n_basis >= 4, ErrorCode::invalid_argument, "solve: need at least 4 basis functions");
  BasisSolution sol = detail::diagonalize(spec, n_basis);
  if (check_convergence) {
    const BasisSolution bigger = detail::diagonalize(spec, n_basis + 20);
    const int k = std::min(10, n_basis);
    double worst = 0.0;
    for (int i = 0; i < k; ++i) {
      const double e = sol.energies(i);
      worst = std::max(worst, std::abs(e - bigger.energies(i)) / std::max(std::abs(e), 1e-12));
    }
    if (worst > 1e-8) {
      sol.converged = false;
      sol.warning = "lowest energies changed by " + std::to_string(worst) +
                    " relative when the basis grew by 20";
    }
  }
  return sol;
}

}  // namespace qconfine::dw
