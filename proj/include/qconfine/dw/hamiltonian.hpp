#pragma once

#include <cmath>

#include "qconfine/dw/potential.hpp"
#include "qconfine/numerics/eigen.hpp"
#include "qconfine/numerics/roots.hpp"

// Hamiltonian matrices in the harmonic-oscillator number basis
// phi_m(x) = (2 sigma)^{1/4} h_m(sqrt(2 sigma) x), i.e. Gaussian e^{-sigma x^2}.

namespace qconfine::dw {

enum class Parity { none, even, odd };
enum class Space { position, momentum };

/// Closed-form diagonal element h_ll.
inline double diagonal_element(const PotentialSpec& v, double sigma, int l) {
  const double ld = l;
  return 3.0 * v.alpha * (2.0 * ld * ld + 2.0 * ld + 1.0) / (16.0 * sigma * sigma) -
         (v.beta + 4.0 * sigma * sigma) * (2.0 * ld + 1.0) / (4.0 * sigma) + 2.0 * sigma * (2.0 * ld + 1.0) +
         v.v0;
}

/// Sum of diagonal elements for m = 0..n_basis-1.
inline double trace_closed_form(const PotentialSpec& v, double sigma, int n_basis) {
  double t = 0.0;
  for (int m = 0; m < n_basis; ++m) t += diagonal_element(v, sigma, m);
  return t;
}

/// Positive root of 8 sigma^3 + 2 beta sigma - alpha C = 0 with
/// C = (2N^2+4N+3)/(N+1), 2N+1 or 2N+3 for parity none, even, odd.
/// The trace over m = 0..N is stationary at the parity=none root.
inline double optimal_sigma(double alpha, double beta, int n, Parity parity) {
  require(alpha > 0.0, ErrorCode::invalid_argument, "optimal_sigma: alpha must be positive");
  require(n >= 0, ErrorCode::invalid_argument, "optimal_sigma: N must be non-negative");
  const double nd = n;
  double c = 0.0;
  switch (parity) {
    case Parity::none: c = (2.0 * nd * nd + 4.0 * nd + 3.0) / (nd + 1.0); break;
    case Parity::even: c = 2.0 * nd + 1.0; break;
    case Parity::odd: c = 2.0 * nd + 3.0; break;
  }
  // For beta < 0 the linear coefficient is negative; the root stays unique
  // because the cubic is increasing wherever it is positive.
  if (beta >= 0.0) return numerics::real_cubic_root(8.0, 2.0 * beta, -alpha * c);
  auto f = [&](double s) { return 8.0 * s * s * s + 2.0 * beta * s - alpha * c; };
  double hi = 1.0;
  while (f(hi) < 0.0) hi *= 2.0;
  double s = numerics::bisect(f, 0.0, hi, 1e-15 * hi);
  for (int i = 0; i < 3; ++i) s -= f(s) / (24.0 * s * s + 2.0 * beta);
  return s;
}

/// Banded symmetric Hamiltonian of order n_basis. In momentum space the
/// basis functions carry the real phases (-1)^{floor(m/2)}, which flips the
/// sign of the |l-m| = 2 band and alternates the |l-m| = 1 band; the matrix
/// is orthogonally similar to the position-space one.
inline numerics::Matrix build_hamiltonian(const PotentialSpec& v, double sigma, int n_basis,
                                          Space space = Space::position) {
  require(sigma > 0.0, ErrorCode::invalid_argument, "build_hamiltonian: sigma must be positive");
  require(n_basis >= 4, ErrorCode::invalid_argument, "build_hamiltonian: need at least 4 basis functions");
  numerics::Matrix h = numerics::Matrix::Zero(n_basis, n_basis);
  const double s2 = sigma * sigma;
  for (int l = 0; l < n_basis; ++l) {
    const double ld = l;
    h(l, l) = diagonal_element(v, sigma, l);
    if (l >= 1 && v.gamma != 0.0) h(l, l - 1) = h(l - 1, l) = v.gamma * std::sqrt(ld / (4.0 * sigma));
    if (l >= 2)
      h(l, l - 2) = h(l - 2, l) = (v.alpha * (2.0 * ld - 1.0) / (8.0 * s2) - (v.beta + 4.0 * s2) / (4.0 * sigma)) *
                                  std::sqrt(ld * (ld - 1.0));
    if (l >= 4)
      h(l, l - 4) = h(l - 4, l) =
          v.alpha / (16.0 * s2) * std::sqrt(ld * (ld - 1.0) * (ld - 2.0) * (ld - 3.0));
  }
  if (space == Space::momentum) {
    for (int l = 0; l < n_basis; ++l)
      for (int m = 0; m < n_basis; ++m)
        if (((l / 2) + (m / 2)) % 2 == 1) h(l, m) = -h(l, m);
  }
  return h;
}

}  // namespace qconfine::dw
