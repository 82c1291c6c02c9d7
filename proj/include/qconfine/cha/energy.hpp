#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "qconfine/numerics/kummer.hpp"

// Hydrogen in an impenetrable sphere. Everything here works in the scaled
// problem with Z = 1: s = Z r, e = E / Z^2, wall at R = Z r_c. The regular
// radial solution is written R(s) = s^l f(s) with f(0) = 1, and the levels
// are the zeros of f(R) as a function of the energy.

namespace qconfine::cha {

inline constexpr double infinite_radius = std::numeric_limits<double>::infinity();

/// How f(s) is evaluated for a given energy.
///  - kummer: e < 0, f = e^{-kappa s} M(l+1-nu, 2l+2, 2 kappa s) with
///    nu = 1/kappa = nu_int + delta held in split form, so levels that sit
///    exponentially close to a free level (delta tiny) stay resolvable.
///  - frobenius: power series in s, valid for any sign of e; used when
///    e >= 0 or kappa R is small.
struct Level {
  enum class Branch { kummer, frobenius } branch = Branch::frobenius;
  int l = 0;
  long double energy = 0.0L;  ///< scaled energy e
  double nu_int = 0.0;        ///< kummer only
  double delta = 0.0;         ///< kummer only

  double kappa() const { return 1.0 / (nu_int + delta); }
};

/// f, f' and f'' at one abscissa.
struct RadialValue {
  double f = 0.0, df = 0.0, d2f = 0.0;
};

namespace detail {

inline RadialValue frobenius(long double e, int l, double s) {
  RadialValue out;
  if (s == 0.0) {
    out.f = 1.0;
    out.df = -1.0 / (l + 1.0);
    // 2(2l+3) c2 = -2 c1 - 2e c0
    out.d2f = 2.0 * static_cast<double>((-2.0L * (-1.0L / (l + 1)) - 2.0L * e) / (2.0L * (2 * l + 3)));
    return out;
  }
  const long double r = s;
  long double t_prev = 1.0L;                  // t_0 = c_0 s^0
  long double t = -r / (l + 1.0L);            // t_1
  long double f = t_prev + t, g = t, h = 0.0L;  // sums of t_j, j t_j, j(j-1) t_j
  long double peak = std::max(1.0L, std::fabs(t));
  int quiet = 0;
  for (int j = 2; j < 100000; ++j) {
    const long double next = (-2.0L * r * t - 2.0L * e * r * r * t_prev) / (static_cast<long double>(j) * (j + 2 * l + 1));
    t_prev = t;
    t = next;
    f += t;
    g += j * t;
    h += static_cast<long double>(j) * (j - 1) * t;
    peak = std::max(peak, std::fabs(t));
    if (std::fabs(t) < 1e-24L * peak && std::fabs(t_prev) < 1e-24L * peak) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
  }
  out.f = static_cast<double>(f);
  out.df = static_cast<double>(g / r);
  out.d2f = static_cast<double>(h / (r * r));
  return out;
}

// f(s) = e^{-kappa s} M(a, b, 2 kappa s) and derivatives, on a common scale.
// Returns the mantissas and the log of the shared factor.
inline RadialValue kummer_scaled(double nu_int, double delta, int l, double s, double& log_scale) {
  const double kappa = 1.0 / (nu_int + delta);
  const double b = 2.0 * l + 2.0;
  const auto m = numerics::kummer_1f1_split(l + 1.0 - nu_int, -delta, b, 2.0 * kappa * s);
  log_scale = m.log_scale - kappa * s;
  RadialValue out;
  out.f = m.m;
  out.df = kappa * (2.0 * m.dm - m.m);
  out.d2f = kappa * kappa * (m.m - 4.0 * m.dm + 4.0 * m.d2m);
  return out;
}

}  // namespace detail

/// f, f', f'' of a level at scaled radius s.
inline RadialValue radial_value(const Level& lv, double s) {
  if (lv.branch == Level::Branch::frobenius) return detail::frobenius(lv.energy, lv.l, s);
  double log_scale = 0.0;
  RadialValue v = detail::kummer_scaled(lv.nu_int, lv.delta, lv.l, s, log_scale);
  const double k = std::exp(log_scale);
  v.f *= k;
  v.df *= k;
  v.d2f *= k;
  return v;
}

namespace detail {

// Kappa R below which the power series is preferred for negative energies.
inline constexpr double series_limit = 8.0;

// Sign-carrying value of f(R) at scan variable tau (e = -tau^2/2 for tau < 0,
// e = tau^2/2 for tau >= 0). Only the sign and continuity matter.
inline double quantization(double tau, int l, double wall) {
  if (tau < 0.0 && -tau * wall >= series_limit) {
    const double nu = -1.0 / tau;
    const double nu_int = std::round(nu);
    double log_scale = 0.0;
    return kummer_scaled(nu_int, nu - nu_int, l, wall, log_scale).f;
  }
  const long double e = tau < 0.0 ? -0.5L * tau * tau : 0.5L * tau * tau;
  return frobenius(e, l, wall).f;
}

inline double kummer_delta_value(double nu_int, double delta, int l, double wall) {
  double log_scale = 0.0;
  return kummer_scaled(nu_int, delta, l, wall, log_scale).f;
}

// Bisection on delta that switches to geometric midpoints when the bracket
// spans many decades on one side of zero.
inline double bisect_delta(double nu_int, double lo, double hi, int l, double wall) {
  auto f = [&](double d) { return kummer_delta_value(nu_int, d, l, wall); };
  double flo = f(lo);
  const double fhi = f(hi);
  if ((flo < 0.0) == (fhi < 0.0)) return 0.5 * (lo + hi);
  if (lo < 0.0 && hi > 0.0) {
    const double f0 = f(0.0);
    if (f0 == 0.0) return 0.0;
    if ((f0 < 0.0) == (flo < 0.0)) {
      lo = 0.0;
      flo = f0;
    } else {
      hi = 0.0;
    }
  }
  constexpr double tiny = 1e-300;
  if (lo == 0.0) {
    if ((f(tiny) < 0.0) != (flo < 0.0)) return 0.0;
    lo = tiny;
    flo = f(tiny);
  }
  if (hi == 0.0) {
    if ((f(-tiny) < 0.0) == (flo < 0.0)) return 0.0;
    hi = -tiny;
  }
  for (int it = 0; it < 2000; ++it) {
    double mid;
    if (lo > 0.0 && hi > 4.0 * lo)
      mid = std::sqrt(lo) * std::sqrt(hi);
    else if (hi < 0.0 && lo < 4.0 * hi)
      mid = -std::sqrt(-lo) * std::sqrt(-hi);
    else
      mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4e-16 * std::max(std::abs(lo), std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

inline Level refine(double tau_lo, double tau_hi, int l, double wall) {
  Level lv;
  lv.l = l;
  if (tau_hi < 0.0 && -tau_hi * wall >= series_limit) {
    const double nu_lo = -1.0 / tau_lo, nu_hi = -1.0 / tau_hi;
    const double nu_int = std::round(0.5 * (nu_lo + nu_hi));
    lv.branch = Level::Branch::kummer;
    lv.nu_int = nu_int;
    lv.delta = bisect_delta(nu_int, nu_lo - nu_int, nu_hi - nu_int, l, wall);
    const long double nu = static_cast<long double>(nu_int) + lv.delta;
    lv.energy = -0.5L / (nu * nu);
    return lv;
  }
  double lo = tau_lo, hi = tau_hi;
  double flo = quantization(lo, l, wall);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = quantization(mid, l, wall);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const long double tau = 0.5L * (static_cast<long double>(lo) + hi);
  lv.branch = Level::Branch::frobenius;
  lv.energy = tau < 0 ? -0.5L * tau * tau : 0.5L * tau * tau;
  return lv;
}

}  // namespace detail

/// The (n-l)-th level of angular momentum l for a wall at scaled radius R.
/// The scan starts at e = -1/(2(l+1)^2), below every level of this l, and
/// walks upward counting sign changes of f(R). The upper end of the window
/// is doubled twice before window-exhausted is raised.
inline Level find_level(int n, int l, double wall) {
  require(l >= 0 && n >= l + 1, ErrorCode::invalid_argument, "need n >= l + 1 and l >= 0");
  require(wall > 0.0, ErrorCode::invalid_argument, "confinement radius must be positive");
  if (std::isinf(wall)) {
    Level lv;
    lv.l = l;
    lv.branch = Level::Branch::kummer;
    lv.nu_int = n;
    lv.delta = 0.0;
    lv.energy = -0.5L / (static_cast<long double>(n) * n);
    return lv;
  }
  const int wanted = n - l;
  const double pi = std::numbers::pi;
  double tau_max = (wanted + 1.0 + 0.5 * l) * pi / wall;
  double tau = -1.0 / (l + 1.0);
  double q = detail::quantization(tau, l, wall);
  int found = 0;
  for (int attempt = 0; attempt < 3; ++attempt) {
    while (tau < tau_max) {
      double h = tau < 0.0 ? std::max(std::min(0.15 * tau * tau, pi / (8.0 * wall)), pi / (64.0 * wall))
                           : pi / (8.0 * wall);
      double next = std::min(tau + h, tau_max);
      if (tau < 0.0 && next > 0.0) next = 0.0;
      const double qn = detail::quantization(next, l, wall);
      if (qn == 0.0 || (qn < 0.0) != (q < 0.0)) {
        if (++found == wanted) return detail::refine(tau, next, l, wall);
      }
      tau = next;
      q = qn;
      if (qn == 0.0) q = detail::quantization(next + 1e-3 * h, l, wall);
    }
    tau_max *= 2.0;
  }
  throw Error(ErrorCode::window_exhausted, "level not bracketed in the scan window");
}

/// Energy of the (n, l) level for nuclear charge z and wall radius r_c
/// (infinite_radius for the free atom).
inline double cha_energy(int n, int l, double r_c, double z = 1.0) {
  require(z > 0.0, ErrorCode::invalid_argument, "nuclear charge must be positive");
  require(r_c > 0.0, ErrorCode::invalid_argument, "confinement radius must be positive");
  if (std::isinf(r_c)) {
    require(l >= 0 && n >= l + 1, ErrorCode::invalid_argument, "need n >= l + 1 and l >= 0");
    return -z * z / (2.0 * n * n);
  }
  return z * z * static_cast<double>(find_level(n, l, z * r_c).energy);
}

}  // namespace qconfine::cha
