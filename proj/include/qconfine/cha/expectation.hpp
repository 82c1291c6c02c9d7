#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "qconfine/cha/momentum.hpp"

namespace qconfine::cha {

enum class Observable { r, r2, r_inv, r_inv2, p2, p_inv2, V, T, V2, TV, VT };

inline const char* to_string(Observable o) {
  switch (o) {
    case Observable::r: return "r";
    case Observable::r2: return "r2";
    case Observable::r_inv: return "r-1";
    case Observable::r_inv2: return "r-2";
    case Observable::p2: return "p2";
    case Observable::p_inv2: return "p-2";
    case Observable::V: return "V";
    case Observable::T: return "T";
    case Observable::V2: return "V2";
    case Observable::TV: return "TV";
    case Observable::VT: return "VT";
  }
  return "?";
}

inline std::optional<Observable> parse_observable(std::string_view s) {
  for (auto o : {Observable::r, Observable::r2, Observable::r_inv, Observable::r_inv2, Observable::p2,
                 Observable::p_inv2, Observable::V, Observable::T, Observable::V2, Observable::TV, Observable::VT})
    if (s == to_string(o)) return o;
  return std::nullopt;
}

namespace detail {

// (T psi)(r) from the radial derivatives.
inline double kinetic_action(int l, double r, double f, double df, double d2f) {
  return -0.5 * (d2f + 2.0 * df / r - l * (l + 1.0) * f / (r * r));
}

// <p^-2> = <psi|(-lap)^{-1}|psi> with the radial Green's function
// r_<^l / ((2l+1) r_>^{l+1}), folded into a single cumulative integral.
inline double inverse_p2_position(const RadialState& st) {
  const int l = st.l;
  const std::size_t order = static_cast<std::size_t>(st.order);
  const auto ref = numerics::gauss_legendre(order, 0.0, 1.0);
  double inner_before = 0.0;  // int_0^{panel start} psi t^{l+2} dt
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < st.breaks.size(); ++p) {
    const double a = st.breaks[p];
    double panel_inner = 0.0;
    for (std::size_t i = 0; i < order; ++i) {
      const std::size_t idx = p * order + i;
      const double r = st.quad.nodes[idx];
      // int_a^r psi t^{l+2} dt on a sub-rule.
      double partial = 0.0;
      for (std::size_t k = 0; k < order; ++k) {
        const double t = a + (r - a) * ref.nodes[k];
        partial += (r - a) * ref.weights[k] * st.value(t) * std::pow(t, l + 2);
      }
      total += st.quad.weights[idx] * st.psi[idx] * std::pow(r, 1 - l) * (inner_before + partial);
      panel_inner += st.quad.weights[idx] * st.psi[idx] * std::pow(r, l + 2);
    }
    inner_before += panel_inner;
  }
  return 2.0 / (2.0 * l + 1.0) * total;
}

}  // namespace detail

/// Expectation value in position space. p^2 uses -lap on psi and p^-2 the
/// Coulomb-type Green's function, so no momentum transform is needed.
/// TV is <T psi|V psi>; VT uses the eigen-relation T psi = (E - V) psi.
inline double expectation(const RadialState& st, Observable o) {
  const double z = st.z;
  const int l = st.l;
  auto moment = [&](double k) {
    return st.integrate([&](double r, double f, double, double) { return f * f * std::pow(r, k); });
  };
  auto kinetic = [&] {
    return st.integrate([&](double r, double f, double df, double d2f) {
      return f * detail::kinetic_action(l, r, f, df, d2f);
    });
  };
  switch (o) {
    case Observable::r: return moment(1.0);
    case Observable::r2: return moment(2.0);
    case Observable::r_inv: return moment(-1.0);
    case Observable::r_inv2: return moment(-2.0);
    case Observable::p2: return 2.0 * kinetic();
    case Observable::T: return kinetic();
    case Observable::p_inv2: return detail::inverse_p2_position(st);
    case Observable::V: return -z * moment(-1.0);
    case Observable::V2: return z * z * moment(-2.0);
    case Observable::TV:
      return st.integrate([&](double r, double f, double df, double d2f) {
        return detail::kinetic_action(l, r, f, df, d2f) * (-z / r) * f;
      });
    case Observable::VT: return st.energy * (-z * moment(-1.0)) - z * z * moment(-2.0);
  }
  throw Error(ErrorCode::internal, "unknown observable");
}

/// Expectation value in momentum space; only momentum observables are
/// available. <p^2> includes the analytic large-p tail.
inline double expectation(const MomentumState& ms, Observable o) {
  switch (o) {
    case Observable::p2: return ms.integrate([](double p, double f) { return f * f * p * p; }) + ms.p2_tail();
    case Observable::T: return 0.5 * expectation(ms, Observable::p2);
    case Observable::p_inv2: {
      const double v = ms.integrate([](double p, double f) { return p > 0.0 ? f * f / (p * p) : 0.0; });
      require(std::isfinite(v), ErrorCode::accuracy, "<p^-2> integrand not integrable");
      return v;
    }
    default: break;
  }
  throw Error(ErrorCode::invalid_argument,
              std::string("observable ") + to_string(o) + " is not available on a momentum state");
}

}  // namespace qconfine::cha
