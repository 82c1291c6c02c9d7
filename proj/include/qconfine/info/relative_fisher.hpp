#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>

#include "qconfine/cha/momentum.hpp"

namespace qconfine::info {

/// A reference density described by the logarithmic derivatives of its
/// amplitude, g = d ln sqrt(rho_ref) / ds, in each space.
struct Reference {
  std::function<double(double)> log_slope_r;
  std::function<double(double)> log_slope_p;  ///< may be empty
};

/// The nodeless (circular-type) reference of the target's own scale:
/// sqrt(rho_ref) ~ r^l exp(-Z r / n) in position space and
/// t^l / (1 + t^2)^{l+2}, t = n p / Z, in momentum space.
inline Reference circular_reference(int n, int l, double z = 1.0) {
  require(l >= 0 && n >= l + 1 && z > 0.0, ErrorCode::invalid_argument, "need n >= l + 1 and z > 0");
  Reference ref;
  ref.log_slope_r = [n, l, z](double r) { return l / r - z / n; };
  ref.log_slope_p = [n, l, z](double p) {
    const double t = n * p / z;
    return (l / t - 2.0 * (l + 2.0) * t / (1.0 + t * t)) * n / z;
  };
  return ref;
}

struct RelativeFisher {
  double ir_r = 0.0;
  double ir_p = std::numeric_limits<double>::quiet_NaN();
};

/// IR[rho | rho_ref] = int rho |grad ln(rho / rho_ref)|^2 for states whose
/// angular parts coincide, where only the radial gradient survives:
/// 4 int (psi' - psi g)^2 s^2 ds in each space. The momentum part needs a
/// transform built with with_derivative.
inline RelativeFisher relative_fisher_numeric(const cha::RadialState& target, const Reference& ref,
                                              const cha::MomentumState* momentum = nullptr) {
  RelativeFisher out;
  out.ir_r = target.integrate([&](double r, double f, double df, double) {
    const double d = df - f * ref.log_slope_r(r);
    return 4.0 * d * d;
  });
  if (momentum && ref.log_slope_p) {
    require(momentum->dphi_q.size() == momentum->quad.size(), ErrorCode::invalid_argument,
            "momentum state lacks dphi/dp");
    double sum = 0.0;
    for (std::size_t i = 0; i < momentum->quad.size(); ++i) {
      const double p = momentum->quad.nodes[i];
      const double d = momentum->dphi_q[i] - momentum->phi_q[i] * ref.log_slope_p(p);
      sum += momentum->quad.weights[i] * 4.0 * d * d * p * p;
    }
    out.ir_p = sum;
  }
  return out;
}

/// Relative Fisher information against another radial state used as the
/// reference density. The reference must not vanish where the target lives.
inline RelativeFisher relative_fisher_numeric(const cha::RadialState& target, const cha::RadialState& reference) {
  require(target.l == reference.l, ErrorCode::invalid_argument, "reference must share the angular part");
  double peak = 0.0;
  for (double v : target.psi) peak = std::max(peak, std::abs(v));
  RelativeFisher out;
  out.ir_r = 0.0;
  for (std::size_t i = 0; i < target.quad.size(); ++i) {
    const double r = target.quad.nodes[i];
    const double f = target.psi[i];
    if (std::abs(f) < 1e-300 * peak) continue;
    if (!reference.free() && r > reference.extent)
      throw Error(ErrorCode::divergent_integrand, "reference density vanishes inside the target support");
    const auto g = reference.evaluate(r);
    if (g.f == 0.0 || reference.node_count() > 0)
      throw Error(ErrorCode::divergent_integrand, "reference density vanishes inside the target support");
    const double d = target.dpsi[i] - f * g.df / g.f;
    out.ir_r += target.quad.weights[i] * 4.0 * d * d * r * r;
  }
  return out;
}

/// Exact rational p/q.
struct Rational {
  long long num = 0, den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline Rational make_rational(long long num, long long den) {
  const long long g = std::gcd(num, den);
  return {num / g, den / g};
}

/// Closed forms against the nodeless reference of the same scale:
/// IR_r = 8 Z^2 (n-l-1)/n^3 and IR_p = 16 n^2 (n^2 - (l+1)^2) / Z^2. The
/// position form agrees with relative_fisher_numeric; the momentum form
/// does not (see README).
struct RelativeFisherClosed {
  Rational ir_r_rational;  ///< at Z = 1
  double ir_r = 0.0, ir_p = 0.0;
};

inline RelativeFisherClosed relative_fisher_closed(int n, int l, double z = 1.0) {
  require(l >= 0 && n - l >= 2 && z > 0.0, ErrorCode::invalid_argument, "closed forms need n - l >= 2");
  RelativeFisherClosed c;
  const long long nn = n;
  c.ir_r_rational = make_rational(8 * (nn - l - 1), nn * nn * nn);
  c.ir_r = c.ir_r_rational.value() * z * z;
  c.ir_p = 16.0 * n * n * (static_cast<double>(n) * n - (l + 1.0) * (l + 1.0)) / (z * z);
  return c;
}

/// n maximizing the closed-form IR_r at fixed l; ties resolve to the smaller n.
inline int relative_fisher_argmax(int l, int n_max = 200) {
  int best = l + 2;
  double best_v = -1.0;
  for (int n = l + 2; n <= n_max; ++n) {
    const double v = relative_fisher_closed(n, l).ir_r;
    if (v > best_v) {
      best_v = v;
      best = n;
    }
  }
  return best;
}

}  // namespace qconfine::info
