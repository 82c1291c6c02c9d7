#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qconfine/cha/wavefunction.hpp"
#include "qconfine/numerics/polynomials.hpp"

namespace qconfine::cha {

struct MomentumOptions {
  double tail_tolerance = 1e-8;  ///< probability allowed in the asymptotic tail beyond p_max
  int order = 16;                ///< Gauss-Legendre points per panel
  bool with_derivative = false;  ///< also tabulate dphi/dp
};

/// Radial momentum amplitude phi(p) = sqrt(2/pi) int psi(r) j_l(pr) r^2 dr,
/// tabulated on a quadrature over [0, p_max] and on a requested grid.
struct MomentumState {
  int n = 1, l = 0, m = 0;
  double z = 1.0;
  double r_c = infinite_radius;
  double energy = 0.0;

  std::vector<double> p_grid;
  std::vector<double> phi;  ///< at p_grid
  std::vector<double> dphi;  ///< dphi/dp at p_grid, when requested
  double norm_defect = 0.0;

  double p_max = 0.0;
  double wall_slope = 0.0;  ///< d(r psi)/dr at the wall; 0 for the free atom
  double cusp = 0.0;        ///< (8/pi) Z^2 psi(0)^2 for l = 0, else 0
  numerics::Quadrature quad;
  std::vector<double> phi_q;  ///< phi at the quadrature nodes
  std::vector<double> dphi_q;  ///< dphi/dp at the quadrature nodes, when requested

  /// Integral of g(p, phi) p^2 dp over [0, p_max].
  template <class G>
  double integrate(G&& g) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < quad.size(); ++i) {
      const double p = quad.nodes[i];
      sum += quad.weights[i] * g(p, phi_q[i]) * p * p;
    }
    return sum;
  }

  /// Leading large-p contribution to int phi^2 p^4 dp beyond p_max. With a
  /// wall, phi ~ sqrt(2/pi) u'(r_c) sin(p r_c - l pi/2) / p^3; for l = 0 the
  /// nuclear cusp adds phi ~ sqrt(2/pi) 2 Z psi(0) / p^4.
  double p2_tail() const {
    return wall_slope * wall_slope / (std::numbers::pi * p_max) + cusp / (3.0 * p_max * p_max * p_max);
  }
};

namespace detail {

struct RadialSamples {
  std::vector<double> r, wr2psi;  ///< nodes and w_i r_i^2 psi_i
};

inline RadialSamples radial_samples(const RadialState& st, double p_top, double reach, int order) {
  std::vector<double> breaks{0.0};
  for (double r : st.nodes_r)
    if (r < reach) breaks.push_back(r);
  breaks.push_back(reach);
  const double k = std::sqrt(2.0 * std::max(0.0, st.energy)) + st.z;
  const double width = std::min({reach / 8.0, 1.0 / k, std::numbers::pi / std::max(p_top, 1e-300)});
  const auto q = numerics::composite_gauss_legendre(numerics::subdivide(breaks, width), order);
  RadialSamples out;
  out.r = q.nodes;
  out.wr2psi.resize(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out.wr2psi[i] = q.weights[i] * q.nodes[i] * q.nodes[i] * st.value(q.nodes[i]);
  return out;
}

inline double transform_at(const RadialSamples& rs, int l, double p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rs.r.size(); ++i) sum += rs.wr2psi[i] * numerics::spherical_bessel_j(l, p * rs.r[i]);
  return std::sqrt(2.0 / std::numbers::pi) * sum;
}

// j_l'(x) = (l/x) j_l(x) - j_{l+1}(x).
inline double spherical_bessel_dj(int l, double x) {
  if (x < 1e-8) return l == 1 ? 1.0 / 3.0 : 0.0;
  return l / x * numerics::spherical_bessel_j(l, x) - numerics::spherical_bessel_j(l + 1, x);
}

inline double transform_derivative_at(const RadialSamples& rs, int l, double p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rs.r.size(); ++i)
    sum += rs.wr2psi[i] * rs.r[i] * spherical_bessel_dj(l, p * rs.r[i]);
  return std::sqrt(2.0 / std::numbers::pi) * sum;
}

}  // namespace detail

/// Momentum-space counterpart of a radial state. Beyond p_max the amplitude
/// follows its large-p asymptotics (the wall term above, and for l = 0 the
/// nuclear cusp, phi ~ sqrt(2/pi) 2 Z psi(0) / p^4); p_max is chosen so the
/// probability carried by that tail is below the tail tolerance, and the
/// tail is included in norm_defect. Raises accuracy when the norm defect
/// exceeds 1e-4.
inline MomentumState momentum_transform(const RadialState& st, std::span<const double> p_grid = {},
                                        MomentumOptions opt = {}) {
  MomentumState ms;
  ms.n = st.n;
  ms.l = st.l;
  ms.m = st.m;
  ms.z = st.z;
  ms.r_c = st.r_c;
  ms.energy = st.energy;
  const double pi = std::numbers::pi;

  ms.cusp = st.l == 0 ? 8.0 / pi * std::pow(st.z * st.value(0.0), 2) : 0.0;
  if (!st.free()) ms.wall_slope = st.r_c * st.derivative(st.r_c);
  const double wall = ms.wall_slope * ms.wall_slope / (3.0 * pi);
  const double cusp = ms.cusp / 5.0;
  auto tail = [&](double p) { return wall / (p * p * p) + cusp / std::pow(p, 5); };

  double p_max = 24.0 * (st.z / st.n + std::sqrt(2.0 * std::max(0.0, st.energy)));
  p_max = std::max({p_max, std::cbrt(wall / opt.tail_tolerance), std::pow(cusp / opt.tail_tolerance, 0.2)});
  // reach: int |psi| r^2 dr beyond it is below 1e-15 (sets the radial
  // sampling); spread: the probability beyond it is below 1e-14 (sets the
  // momentum panel width).
  double reach = st.extent, spread = st.extent;
  {
    double mass = 0.0, prob = 0.0;
    bool have_reach = false;
    for (std::size_t i = st.quad.size(); i-- > 0;) {
      const double r = st.quad.nodes[i];
      mass += st.quad.weights[i] * std::abs(st.psi[i]) * r * r;
      prob += st.quad.weights[i] * st.psi[i] * st.psi[i] * r * r;
      if (!have_reach && mass > 1e-15) {
        reach = std::min(st.extent, r * 1.05);
        have_reach = true;
      }
      if (prob > 1e-14) {
        spread = std::min(st.extent, r * 1.05);
        break;
      }
    }
  }
  if (!st.free()) {
    p_max = std::max(p_max, 16.0 * pi / st.r_c);
    // Align p_max with a zero of sin(2 p r_c - l pi) so the averaged tail formula is sharp.
    const double period = pi / (2.0 * st.r_c);
    const double shift = st.l * pi / (2.0 * st.r_c);
    p_max = shift + std::ceil((p_max - shift) / period) * period;
  }

  for (int attempt = 0; attempt < 6; ++attempt) {
    const auto rs = detail::radial_samples(st, p_max, reach, opt.order);
    const double width = std::min(p_max / 16.0, pi / spread);
    const double half = 0.5 * p_max;
    std::vector<double> breaks{0.0, half, p_max};
    const auto q = numerics::composite_gauss_legendre(numerics::subdivide(breaks, width), opt.order);
    std::vector<double> phi(q.size());
    double total = 0.0, outer = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      phi[i] = detail::transform_at(rs, st.l, q.nodes[i]);
      const double c = q.weights[i] * phi[i] * phi[i] * q.nodes[i] * q.nodes[i];
      total += c;
      if (q.nodes[i] > half) outer += c;
    }
    // The outer half must look like the asymptotic regime before the tail formula is trusted.
    if (outer - (tail(half) - tail(p_max)) > 100.0 * opt.tail_tolerance && attempt < 5) {
      p_max *= 2.0;
      continue;
    }
    ms.p_max = p_max;
    ms.quad = q;
    ms.phi_q = std::move(phi);
    ms.norm_defect = std::abs(1.0 - total - tail(p_max));
    if (opt.with_derivative) {
      ms.dphi_q.resize(q.size());
      for (std::size_t i = 0; i < q.size(); ++i) ms.dphi_q[i] = detail::transform_derivative_at(rs, st.l, q.nodes[i]);
    }
    require(ms.norm_defect <= 1e-4, ErrorCode::accuracy,
            "momentum norm defect " + std::to_string(ms.norm_defect) + "; use denser panels");
    const double top = p_grid.empty() ? 0.0 : *std::max_element(p_grid.begin(), p_grid.end());
    const auto grid_rs = top > p_max ? detail::radial_samples(st, top, reach, opt.order) : rs;
    ms.p_grid.assign(p_grid.begin(), p_grid.end());
    for (double p : p_grid) {
      require(p >= 0.0, ErrorCode::invalid_argument, "momentum grid must be non-negative");
      ms.phi.push_back(detail::transform_at(grid_rs, st.l, p));
      if (opt.with_derivative) ms.dphi.push_back(detail::transform_derivative_at(grid_rs, st.l, p));
    }
    return ms;
  }
  throw Error(ErrorCode::internal, "momentum transform did not terminate");
}

}  // namespace qconfine::cha
