#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qconfine/numerics/error.hpp"

namespace qconfine::numerics {

/// Bisection on a bracket [lo, hi] with f(lo), f(hi) of opposite sign.
/// Stops when the bracket is narrower than `tol` (absolute).
template <class F>
double bisect(F&& f, double lo, double hi, double tol = 1e-11) {
  double flo = f(lo);
  for (int iter = 0; iter < 400 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Unique positive root of c3*s^3 + c1*s + c0 = 0 with c3 > 0, c1 >= 0, c0 < 0.
/// Cardano's formula for the starting value, Newton for the last digits.
inline double real_cubic_root(double c3, double c1, double c0) {
  require(c3 > 0.0, ErrorCode::invalid_argument, "real_cubic_root: need c3 > 0");
  const double p = c1 / c3, q = c0 / c3;  // s^3 + p s + q = 0
  auto f = [&](double s) { return (s * s + p) * s + q; };
  double s;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    s = std::cbrt(-q / 2.0 + r) + std::cbrt(-q / 2.0 - r);
  } else {
    // Three real roots; take the largest, which is the positive one when q < 0.
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double theta = std::acos(std::clamp(3.0 * q / (p * m), -1.0, 1.0)) / 3.0;
    s = m * std::cos(theta);
  }
  for (int iter = 0; iter < 8; ++iter) {
    const double d = 3.0 * s * s + p;
    if (d == 0.0) break;
    const double step = f(s) / d;
    s -= step;
    if (std::abs(step) <= 1e-16 * std::abs(s)) break;
  }
  if (!(s > 0.0) || std::abs(f(s)) > 1e-10 * (1.0 + std::abs(q))) {
    // Fall back to a bracketed search on [0, hi] where f(0) = q.
    if (q >= 0.0) throw Error(ErrorCode::internal, "real_cubic_root: no positive root");
    double hi = 1.0;
    while (f(hi) < 0.0) hi *= 2.0;
    s = bisect(f, 0.0, hi, 1e-15 * hi);
  }
  return s;
}

/// Scans [lo, hi] on n_scan equal steps for sign changes and bisects each
/// one. Returns the roots in increasing order; an empty result means no
/// sign change was seen at this resolution.
template <class F>
std::vector<double> bracket_and_bisect(F&& f, double lo, double hi, std::size_t n_scan,
                                       double tol = 1e-11) {
  require(n_scan >= 2, ErrorCode::invalid_argument, "bracket_and_bisect: n_scan must be >= 2");
  require(lo < hi, ErrorCode::invalid_argument, "bracket_and_bisect: need lo < hi");
  std::vector<double> roots;
  double x0 = lo, f0 = f(lo);
  for (std::size_t i = 1; i <= n_scan; ++i) {
    const double x1 = i == n_scan ? hi : lo + (hi - lo) * static_cast<double>(i) / n_scan;
    const double f1 = f(x1);
    if (f0 == 0.0) {
      roots.push_back(x0);
    } else if ((f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
      roots.push_back(bisect(f, x0, x1, tol));
    }
    x0 = x1;
    f0 = f1;
  }
  if (f0 == 0.0) roots.push_back(x0);
  return roots;
}

}  // namespace qconfine::numerics
