#pragma once

#include <cmath>
#include <limits>

#include "qconfine/numerics/error.hpp"

namespace qconfine::numerics {

/// Value of M(a,b,x) and its first two x-derivatives, all sharing one
/// scale factor: the true values are mantissa * exp(log_scale).
struct KummerValue {
  double m = 0.0;
  double dm = 0.0;
  double d2m = 0.0;
  double log_scale = 0.0;

  double value() const { return m * std::exp(log_scale); }
  double derivative() const { return dm * std::exp(log_scale); }
  double second_derivative() const { return d2m * std::exp(log_scale); }
};

/// Kummer series M(a,b,x) with the first parameter given as a = a_int + a_frac,
/// where a_int is an integer (held exactly in a double) and a_frac is small.
/// Each Pochhammer factor (a+k) is formed as (a_int+k) + a_frac, so the factor
/// that passes through zero is exactly a_frac. This keeps the sum accurate when
/// a sits extremely close to a non-positive integer.
inline KummerValue kummer_1f1_split(double a_int, double a_frac, double b, double x) {
  require(!(b <= 0.0 && b == std::floor(b)), ErrorCode::domain_error,
          "kummer_1f1: b must not be a non-positive integer");
  KummerValue out;
  const double a = a_int + a_frac;
  if (x == 0.0) {
    out.m = 1.0;
    out.dm = a / b;
    out.d2m = a * (a + 1.0) / (b * (b + 1.0));
    return out;
  }

  constexpr double big = 1e250;
  const double log_big = std::log(big);
  double term = 1.0, sum = 1.0, sum1 = 0.0, sum2 = 0.0;
  int small_run = 0;
  // Terms keep growing until k exceeds roughly x; beyond that the ratio decays.
  const long max_terms = 20000 + static_cast<long>(4.0 * std::abs(x));
  for (long k = 0; k < max_terms; ++k) {
    const double kd = static_cast<double>(k);
    const double pochhammer = (a_int + kd) + a_frac;
    term *= pochhammer * x / ((b + kd) * (kd + 1.0));
    const double k1 = kd + 1.0;
    sum += term;
    sum1 += k1 * term;
    sum2 += k1 * kd * term;
    if (std::abs(term) > big || std::abs(sum) > big) {
      term /= big;
      sum /= big;
      sum1 /= big;
      sum2 /= big;
      out.log_scale += log_big;
    }
    if (term == 0.0) break;
    const bool past_polynomial = a_int + kd + 1.0 > 0.0;
    if (past_polynomial && std::abs(term) < 1e-17 * std::abs(sum) && kd > x) {
      if (++small_run >= 5) break;
    } else {
      small_run = 0;
    }
  }
  out.m = sum;
  out.dm = sum1 / x;
  out.d2m = sum2 / (x * x);
  return out;
}

/// Scaled Kummer function for general real a.
inline KummerValue kummer_1f1_scaled(double a, double b, double x) {
  const double a_int = std::round(a);
  return kummer_1f1_split(a_int, a - a_int, b, x);
}

/// Confluent hypergeometric function 1F1(a; b; x). Overflows to infinity
/// for very large x; use kummer_1f1_scaled() there.
inline double kummer_1f1(double a, double b, double x) {
  return kummer_1f1_scaled(a, b, x).value();
}

}  // namespace qconfine::numerics
