#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "qconfine/cha/momentum.hpp"
#include "qconfine/dw/wavefunction.hpp"
#include "qconfine/numerics/polynomials.hpp"
#include "qconfine/numerics/quadrature.hpp"

namespace qconfine::info {

enum class DensityKind { line_1d, radial_r, radial_p, angular_theta };

inline const char* to_string(DensityKind k) {
  switch (k) {
    case DensityKind::line_1d: return "line-1d";
    case DensityKind::radial_r: return "radial-r";
    case DensityKind::radial_p: return "radial-p";
    case DensityKind::angular_theta: return "angular-theta";
  }
  return "?";
}

/// A probability density tabulated on quadrature abscissae. `weights`
/// already carry the measure (s^2 for radial kinds, sin(theta) for the
/// polar kind), so sum_i weights[i] * values[i] = 1 up to
/// normalization_defect. When known, `amp_derivative` holds d sqrt(rho)/ds
/// (up to sign) for the Fisher functional.
struct DensityProfile {
  DensityKind kind = DensityKind::line_1d;
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> weights;
  std::vector<double> amp_derivative;
  double normalization_defect = 0.0;
  /// int rho^lambda over the measure beyond the last grid point, when an
  /// asymptotic form of the density is known there.
  std::function<double(double)> tail_moment;

  std::size_t size() const { return grid.size(); }

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) sum += weights[i] * f(values[i]);
    return sum;
  }
};

namespace detail {
inline void finish(DensityProfile& d) {
  double total = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) total += d.weights[i] * d.values[i];
  d.normalization_defect = std::abs(1.0 - total);
}
}  // namespace detail

/// Density of a double-well state in position or momentum space.
inline DensityProfile dw_profile(const dw::BasisSolution& sol, int state, dw::Space space) {
  const auto q = dw::support_quadrature(sol, space);
  const auto s = dw::sample_state(sol, state, q.nodes, space);
  DensityProfile d;
  d.kind = DensityKind::line_1d;
  d.grid = q.nodes;
  d.weights = q.weights;
  d.values.resize(q.size());
  d.amp_derivative.resize(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    d.values[i] = s[i].density();
    d.amp_derivative[i] = s[i].abs_derivative();
  }
  detail::finish(d);
  return d;
}

/// Radial position density psi^2 of a hydrogenic state.
inline DensityProfile radial_profile(const cha::RadialState& st) {
  DensityProfile d;
  d.kind = DensityKind::radial_r;
  d.grid = st.quad.nodes;
  d.values.resize(st.quad.size());
  d.weights.resize(st.quad.size());
  d.amp_derivative = st.dpsi;
  for (std::size_t i = 0; i < st.quad.size(); ++i) {
    const double r = st.quad.nodes[i];
    d.values[i] = st.psi[i] * st.psi[i];
    d.weights[i] = st.quad.weights[i] * r * r;
  }
  detail::finish(d);
  return d;
}

namespace detail {

/// int_P^inf rho^lambda p^2 dp for the large-p forms of phi^2: with a wall,
/// (2/pi) w^2 sin^2(p r_c - l pi/2) / p^6 averaged over the oscillation;
/// for the free atom, C (1 + D/p^2) / p^{2l+8} matched at two outer nodes.
inline std::function<double(double)> momentum_tail(const cha::MomentumState& ms) {
  const double pi = std::numbers::pi;
  const double big_p = ms.p_max;
  if (!std::isinf(ms.r_c)) {
    const double a = 2.0 / pi * ms.wall_slope * ms.wall_slope;
    return [a, big_p, pi](double lambda) {
      require(lambda > 0.5, ErrorCode::divergent_integrand,
              "momentum moments of a confined state diverge for order <= 1/2");
      const double mean_sin = std::exp(std::lgamma(lambda + 0.5) - std::lgamma(lambda + 1.0)) / std::sqrt(pi);
      return std::pow(a, lambda) * mean_sin * std::pow(big_p, 3.0 - 6.0 * lambda) / (6.0 * lambda - 3.0);
    };
  }
  const std::size_t n = ms.quad.size();
  if (n < 2) return {};
  const double k = 2.0 * ms.l + 8.0;
  std::size_t j = n - 1;
  while (j > 0 && ms.quad.nodes[j] > 0.7 * ms.quad.nodes[n - 1]) --j;
  const double p1 = ms.quad.nodes[j], p2 = ms.quad.nodes[n - 1];
  const double g1 = ms.phi_q[j] * ms.phi_q[j] * std::pow(p1, k), g2 = ms.phi_q[n - 1] * ms.phi_q[n - 1] * std::pow(p2, k);
  // g = C (1 + D / p^2) through both nodes
  const double u1 = 1.0 / (p1 * p1), u2 = 1.0 / (p2 * p2);
  const double cd = (g1 - g2) / (u1 - u2), c = g2 - cd * u2;
  const double dd = c > 0.0 ? cd / c : 0.0;
  return [c, dd, k, big_p](double lambda) {
    require(lambda * k > 3.0, ErrorCode::divergent_integrand, "momentum moment diverges at this order");
    if (c <= 0.0) return 0.0;
    return std::pow(c, lambda) * (std::pow(big_p, 3.0 - lambda * k) / (lambda * k - 3.0) +
                                  lambda * dd * std::pow(big_p, 1.0 - lambda * k) / (lambda * k - 1.0));
  };
}

}  // namespace detail

/// Radial momentum density phi^2 of a hydrogenic state. The part of the
/// norm beyond p_max is not tabulated; entropic moments add it through
/// tail_moment.
inline DensityProfile momentum_profile(const cha::MomentumState& ms) {
  DensityProfile d;
  d.kind = DensityKind::radial_p;
  d.grid = ms.quad.nodes;
  d.values.resize(ms.quad.size());
  d.weights.resize(ms.quad.size());
  for (std::size_t i = 0; i < ms.quad.size(); ++i) {
    const double p = ms.quad.nodes[i];
    d.values[i] = ms.phi_q[i] * ms.phi_q[i];
    d.weights[i] = ms.quad.weights[i] * p * p;
  }
  d.tail_moment = detail::momentum_tail(ms);
  detail::finish(d);
  return d;
}

/// Polar density chi(theta) = Theta_{l,m}(theta)^2 with
/// int chi sin(theta) dtheta = 1 (chi = 1/2 for s states).
inline DensityProfile angular_profile(int l, int m, int points = 400) {
  require(l >= 0 && std::abs(m) <= l, ErrorCode::invalid_argument, "need |m| <= l");
  const auto q = numerics::uniform_panels(0.0, std::numbers::pi, static_cast<std::size_t>(points / 20), 20);
  DensityProfile d;
  d.kind = DensityKind::angular_theta;
  d.grid = q.nodes;
  d.values.resize(q.size());
  d.weights.resize(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double t = numerics::polar_harmonic(l, m, q.nodes[i]);
    d.values[i] = t * t;
    d.weights[i] = q.weights[i] * std::sin(q.nodes[i]);
  }
  detail::finish(d);
  return d;
}

/// A density known only on an ascending grid. Weights follow the trapezoid
/// rule times the measure of `kind`.
inline DensityProfile tabulated_profile(DensityKind kind, std::vector<double> grid, std::vector<double> values) {
  require(grid.size() == values.size() && grid.size() >= 3, ErrorCode::invalid_argument,
          "tabulated profile needs matching grid and values (>= 3 points)");
  DensityProfile d;
  d.kind = kind;
  d.grid = std::move(grid);
  d.values = std::move(values);
  d.weights.assign(d.size(), 0.0);
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    const double h = d.grid[i + 1] - d.grid[i];
    require(h > 0.0, ErrorCode::invalid_argument, "profile grid must increase");
    d.weights[i] += 0.5 * h;
    d.weights[i + 1] += 0.5 * h;
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double s = d.grid[i];
    if (kind == DensityKind::radial_r || kind == DensityKind::radial_p) {
      require(s >= 0.0, ErrorCode::invalid_argument, "radial grid must be non-negative");
      d.weights[i] *= s * s;
    } else if (kind == DensityKind::angular_theta) {
      d.weights[i] *= std::sin(s);
    }
  }
  for (double v : d.values) require(v >= 0.0, ErrorCode::invalid_argument, "density must be non-negative");
  detail::finish(d);
  return d;
}

inline DensityProfile line_profile(std::vector<double> grid, std::vector<double> values) {
  return tabulated_profile(DensityKind::line_1d, std::move(grid), std::move(values));
}

inline std::optional<DensityKind> parse_density_kind(std::string_view s) {
  for (auto k : {DensityKind::line_1d, DensityKind::radial_r, DensityKind::radial_p, DensityKind::angular_theta})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

}  // namespace qconfine::info
