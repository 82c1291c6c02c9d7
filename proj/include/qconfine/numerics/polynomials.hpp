#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "qconfine/numerics/error.hpp"

// Orthogonal polynomials and related functions evaluated by their
// three-term recurrences.

namespace qconfine::numerics {

/// Physicists' Hermite polynomial H_n(x). Grows like x^n; use
/// hermite_functions() for anything inside a basis expansion.
inline double hermite(int n, double x) {
  if (n == 0) return 1.0;
  double h0 = 1.0, h1 = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

/// Normalized Hermite functions h_m(xi) = H_m(xi) e^{-xi^2/2} / sqrt(2^m m! sqrt(pi))
/// for m = 0..count-1, with the Gaussian carried through the recurrence so
/// nothing overflows. Optionally also returns dh_m/dxi.
inline void hermite_functions(double xi, std::size_t count, std::vector<double>& values,
                              std::vector<double>* derivatives = nullptr) {
  values.assign(count, 0.0);
  if (count == 0) return;
  values[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xi * xi);
  if (count > 1) values[1] = std::numbers::sqrt2 * xi * values[0];
  for (std::size_t m = 1; m + 1 < count; ++m) {
    const double md = static_cast<double>(m);
    values[m + 1] = std::sqrt(2.0 / (md + 1.0)) * xi * values[m] -
                    std::sqrt(md / (md + 1.0)) * values[m - 1];
  }
  if (derivatives) {
    derivatives->assign(count, 0.0);
    for (std::size_t m = 0; m < count; ++m) {
      const double md = static_cast<double>(m);
      double d = -xi * values[m];
      if (m > 0) d += std::sqrt(2.0 * md) * values[m - 1];
      (*derivatives)[m] = d;
    }
  }
}

/// Associated Laguerre polynomial L_k^{(alpha)}(x).
inline double assoc_laguerre(int k, double alpha, double x) {
  require(k >= 0, ErrorCode::invalid_argument, "assoc_laguerre: k must be >= 0");
  if (k == 0) return 1.0;
  double l0 = 1.0, l1 = 1.0 + alpha - x;
  for (int j = 1; j < k; ++j) {
    const double l2 = ((2.0 * j + 1.0 + alpha - x) * l1 - (j + alpha) * l0) / (j + 1.0);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

/// Legendre polynomial P_l(x).
inline double legendre(int l, double x) {
  if (l == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int k = 1; k < l; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

/// Associated Legendre function P_l^m(x), m >= 0, without the
/// Condon-Shortley phase.
inline double assoc_legendre(int l, int m, double x) {
  require(m >= 0 && m <= l, ErrorCode::invalid_argument, "assoc_legendre: need 0 <= m <= l");
  double pmm = 1.0;
  const double s = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
  for (int i = 1; i <= m; ++i) pmm *= (2.0 * i - 1.0) * s;
  if (l == m) return pmm;
  double pm1 = x * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pm1;
  for (int ll = m + 2; ll <= l; ++ll) {
    const double p = (x * (2.0 * ll - 1.0) * pm1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pm1;
    pm1 = p;
  }
  return pm1;
}

/// Polar factor Theta_{l,m}(theta) normalized as
/// int_0^pi Theta^2 sin(theta) dtheta = 1.
inline double polar_harmonic(int l, int m, double theta) {
  const int am = std::abs(m);
  require(am <= l, ErrorCode::invalid_argument, "polar_harmonic: need |m| <= l");
  double ratio = 1.0;  // (l-|m|)! / (l+|m|)!
  for (int k = l - am + 1; k <= l + am; ++k) ratio /= k;
  return std::sqrt(0.5 * (2.0 * l + 1.0) * ratio) * assoc_legendre(l, am, std::cos(theta));
}

/// Gegenbauer polynomial C_n^{(lambda)}(x).
inline double gegenbauer(int n, double lambda, double x) {
  require(n >= 0, ErrorCode::invalid_argument, "gegenbauer: n must be >= 0");
  if (n == 0) return 1.0;
  double c0 = 1.0, c1 = 2.0 * lambda * x;
  for (int k = 1; k < n; ++k) {
    const double c2 = (2.0 * (k + lambda) * x * c1 - (k + 2.0 * lambda - 1.0) * c0) / (k + 1.0);
    c0 = c1;
    c1 = c2;
  }
  return c1;
}

/// Spherical Bessel function j_l(x), x >= 0. Power series below x = l + 1
/// (where upward recurrence is unstable), upward recurrence above.
inline double spherical_bessel_j(int l, double x) {
  require(l >= 0, ErrorCode::invalid_argument, "spherical_bessel_j: l must be >= 0");
  const double ax = std::abs(x);
  if (l == 0) return ax < 1e-4 ? 1.0 - ax * ax / 6.0 + ax * ax * ax * ax / 120.0 : std::sin(ax) / ax;
  if (ax < l + 1.0) {
    double lead = 1.0;
    for (int k = 1; k <= l; ++k) lead *= ax / (2.0 * k + 1.0);
    const double y = -0.5 * ax * ax;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= y / (k * (2.0 * l + 2.0 * k + 1.0));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return lead * sum;
  }
  double j0 = std::sin(ax) / ax;
  double j1 = std::sin(ax) / (ax * ax) - std::cos(ax) / ax;
  for (int k = 1; k < l; ++k) {
    const double j2 = (2.0 * k + 1.0) / ax * j1 - j0;
    j0 = j1;
    j1 = j2;
  }
  return j1;
}

}  // namespace qconfine::numerics
