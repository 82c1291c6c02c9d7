#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "qconfine/cha/energy.hpp"
#include "qconfine/numerics/eigen.hpp"
#include "qconfine/numerics/polynomials.hpp"
#include "qconfine/numerics/quadrature.hpp"

namespace qconfine::cha {

struct CollocationOptions {
  double map_length = 0.0;  ///< L of the algebraic map; 0 selects max(0.5, r_c/10)
  double free_radius = 200.0;  ///< outer radius used when r_c is infinite
};

/// Eigenvalues of -u''/2 + [l(l+1)/(2r^2) + potential(r)] u = E u with
/// u(0) = u(r_max) = 0, discretized on Legendre-Gauss-Lobatto points mapped
/// by r(x) = L(1+x)/(1 - x + 2L/r_max). The weak form with the Lobatto rule
/// gives a symmetric generalized problem with a diagonal mass matrix.
inline std::vector<double> collocation_spectrum(int l, double r_max, int n_points,
                                                const std::function<double(double)>& potential,
                                                CollocationOptions opt = {}) {
  require(n_points >= 40, ErrorCode::invalid_argument, "collocation needs at least 40 points");
  require(l >= 0 && r_max > 0.0, ErrorCode::invalid_argument, "collocation: bad l or radius");
  const double big_l = opt.map_length > 0.0 ? opt.map_length : std::max(0.5, r_max / 10.0);
  const int n = n_points;
  const auto [x, w] = numerics::gauss_lobatto(static_cast<std::size_t>(n));
  const int np = n + 1;
  const double c = 2.0 * big_l / r_max;

  std::vector<double> pn(np);
  for (int i = 0; i < np; ++i) pn[i] = numerics::legendre(n, x[i]);
  numerics::Matrix d(np, np);
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j) d(i, j) = i == j ? 0.0 : pn[i] / (pn[j] * (x[i] - x[j]));
  d(0, 0) = -0.25 * n * (n + 1.0);
  d(n, n) = 0.25 * n * (n + 1.0);

  std::vector<double> r(np), jac(np);
  for (int i = 0; i < np; ++i) {
    const double den = 1.0 - x[i] + c;
    r[i] = big_l * (1.0 + x[i]) / den;
    jac[i] = big_l * (2.0 + c) / (den * den);
  }

  const int m = n - 1;  // interior unknowns
  numerics::Matrix a = numerics::Matrix::Zero(m, m);
  for (int k = 0; k < np; ++k) {
    const double wk = 0.5 * w[k] / jac[k];
    for (int i = 0; i < m; ++i) {
      const double di = d(k, i + 1);
      if (di == 0.0) continue;
      for (int j = 0; j < m; ++j) a(i, j) += wk * di * d(k, j + 1);
    }
  }
  std::vector<double> mass(m);
  for (int i = 0; i < m; ++i) {
    const double ri = r[i + 1];
    mass[i] = w[i + 1] * jac[i + 1];
    a(i, i) += mass[i] * (0.5 * l * (l + 1.0) / (ri * ri) + potential(ri));
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) /= std::sqrt(mass[i] * mass[j]);
  a = 0.5 * (a + a.transpose()).eval();
  const auto e = numerics::sym_eig(a);
  return {e.eigenvalues.data(), e.eigenvalues.data() + e.eigenvalues.size()};
}

/// Hydrogenic levels of angular momentum l (lowest first) from the
/// collocation solver; an oracle independent of the 1F1 zeros.
inline std::vector<double> collocation_eigensolve(int l, double r_c, double z = 1.0, int n_points = 200,
                                                  CollocationOptions opt = {}) {
  require(z > 0.0 && r_c > 0.0, ErrorCode::invalid_argument, "collocation: bad charge or radius");
  const double r_max = std::isinf(r_c) ? opt.free_radius : r_c;
  return collocation_spectrum(l, r_max, n_points, [z](double r) { return -z / r; }, opt);
}

}  // namespace qconfine::cha
