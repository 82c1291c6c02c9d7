#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "qconfine/cha/energy.hpp"
#include "qconfine/numerics/polynomials.hpp"
#include "qconfine/numerics/quadrature.hpp"

namespace qconfine::cha {

/// A normalized radial eigenfunction psi_{n,l}(r), with the quadrature used
/// for every integral over it.
struct RadialState {
  int n = 1, l = 0, m = 0;
  double z = 1.0;
  double r_c = infinite_radius;
  double energy = 0.0;

  std::vector<double> r_grid;  ///< requested abscissae
  std::vector<double> u;       ///< psi at r_grid

  Level level;            ///< scaled eigenvalue data
  double norm = 0.0;      ///< N in psi(r) = Z^{3/2} N (Zr)^l f(Zr)
  double extent = 0.0;    ///< upper integration limit in r (r_c, or a cutoff for the free atom)
  std::vector<double> nodes_r;  ///< interior radial nodes

  numerics::Quadrature quad;            ///< rule on [0, extent] with breaks at the nodes
  std::vector<double> breaks;          ///< panel boundaries of quad
  int order = 20;                      ///< points per panel
  std::vector<double> psi, dpsi, d2psi;  ///< psi, psi', psi'' at the quadrature nodes

  bool free() const { return std::isinf(r_c); }
  int node_count() const { return static_cast<int>(nodes_r.size()); }

  /// psi and its first two radial derivatives at r.
  RadialValue evaluate(double r) const {
    const double s = z * r;
    const RadialValue f = radial_value(level, s);
    RadialValue g;
    if (l == 0) {
      g = f;
    } else {
      const double sl = std::pow(s, l);
      const double sl1 = l >= 1 ? std::pow(s, l - 1) : 0.0;
      const double sl2 = l >= 2 ? std::pow(s, l - 2) : 0.0;
      g.f = sl * f.f;
      g.df = l * sl1 * f.f + sl * f.df;
      g.d2f = l * (l - 1) * sl2 * f.f + 2.0 * l * sl1 * f.df + sl * f.d2f;
    }
    const double a = std::pow(z, 1.5) * norm;
    return {a * g.f, a * z * g.df, a * z * z * g.d2f};
  }
  double value(double r) const { return evaluate(r).f; }
  double derivative(double r) const { return evaluate(r).df; }

  /// Integral of g(r, psi, psi', psi'') r^2 dr over the support.
  template <class G>
  double integrate(G&& g) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < quad.size(); ++i) {
      const double r = quad.nodes[i];
      sum += quad.weights[i] * g(r, psi[i], dpsi[i], d2psi[i]) * r * r;
    }
    return sum;
  }
};

namespace detail {

// Scaled cutoff beyond which a free (n, l) density is below ~1e-30 of its peak.
inline double free_cutoff(int n) { return n * (2.0 * n + 40.0); }

inline std::vector<double> find_nodes(const Level& lv, double s_end, int expected) {
  std::vector<double> nodes;
  if (expected <= 0) return nodes;
  const int samples = 400 * (expected + 1);
  double prev_s = 0.0, prev_f = 1.0;
  for (int i = 1; i < samples; ++i) {
    const double s = s_end * i / samples;
    const double f = radial_value(lv, s).f;
    if ((f < 0.0) != (prev_f < 0.0)) {
      double lo = prev_s, hi = s, flo = prev_f;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = radial_value(lv, mid).f;
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      nodes.push_back(0.5 * (lo + hi));
    }
    prev_s = s;
    prev_f = f;
  }
  return nodes;
}

}  // namespace detail

/// Builds the normalized (n, l) eigenfunction for charge z and wall r_c
/// (infinite_radius for the free atom) and samples it on `grid`.
inline RadialState cha_wavefunction(int n, int l, double r_c, double z = 1.0, std::span<const double> grid = {},
                                    int m = 0) {
  require(z > 0.0, ErrorCode::invalid_argument, "nuclear charge must be positive");
  require(r_c > 0.0, ErrorCode::invalid_argument, "confinement radius must be positive");
  require(std::abs(m) <= l, ErrorCode::invalid_argument, "need |m| <= l");
  RadialState st;
  st.n = n;
  st.l = l;
  st.m = m;
  st.z = z;
  st.r_c = r_c;
  st.level = find_level(n, l, z * r_c);
  st.energy = z * z * static_cast<double>(st.level.energy);

  const bool is_free = std::isinf(r_c);
  const double s_end = is_free ? detail::free_cutoff(n) : z * r_c;
  st.extent = s_end / z;
  const auto nodes = detail::find_nodes(st.level, s_end, n - l - 1);
  require(static_cast<int>(nodes.size()) == n - l - 1, ErrorCode::accuracy,
          "radial node count differs from n - l - 1");

  // Panels no wider than a quarter of the local wavelength or 1/8 of the span.
  const double k = std::sqrt(2.0 * std::abs(static_cast<double>(st.level.energy)));
  const double width = std::min(s_end / 8.0, 1.0 / (1.0 + k));
  std::vector<double> breaks{0.0};
  breaks.insert(breaks.end(), nodes.begin(), nodes.end());
  breaks.push_back(s_end);
  const auto fine = numerics::subdivide(breaks, width);
  const auto sq = numerics::composite_gauss_legendre(fine, static_cast<std::size_t>(st.order));
  for (double s : fine) st.breaks.push_back(s / z);

  double integral = 0.0;
  std::vector<RadialValue> raw(sq.size());
  for (std::size_t i = 0; i < sq.size(); ++i) {
    const double s = sq.nodes[i];
    raw[i] = radial_value(st.level, s);
    const double g = std::pow(s, l) * raw[i].f;
    integral += sq.weights[i] * g * g * s * s;
  }
  require(std::isfinite(integral) && integral > 0.0, ErrorCode::resolution, "normalization integral degenerate");
  st.norm = 1.0 / std::sqrt(integral);

  for (double s : nodes) st.nodes_r.push_back(s / z);
  st.quad.a = 0.0;
  st.quad.b = st.extent;
  st.quad.nodes.resize(sq.size());
  st.quad.weights.resize(sq.size());
  st.psi.resize(sq.size());
  st.dpsi.resize(sq.size());
  st.d2psi.resize(sq.size());
  for (std::size_t i = 0; i < sq.size(); ++i) {
    const double r = sq.nodes[i] / z;
    st.quad.nodes[i] = r;
    st.quad.weights[i] = sq.weights[i] / z;
    const RadialValue v = st.evaluate(r);
    st.psi[i] = v.f;
    st.dpsi[i] = v.df;
    st.d2psi[i] = v.d2f;
  }

  st.r_grid.assign(grid.begin(), grid.end());
  st.u.reserve(grid.size());
  for (double r : grid) {
    require(r >= 0.0 && r <= r_c, ErrorCode::invalid_argument, "grid point outside [0, r_c]");
    st.u.push_back(st.value(r));
  }
  return st;
}

/// Closed-form free-atom radial function with associated Laguerre
/// polynomials, used to check the general construction.
inline double free_radial(int n, int l, double r, double z = 1.0) {
  require(l >= 0 && n >= l + 1, ErrorCode::invalid_argument, "need n >= l + 1 and l >= 0");
  const double rho = 2.0 * z * r / n;
  const double log_norm = 1.5 * std::log(2.0 * z / n) + 0.5 * (std::lgamma(n - l) - std::log(2.0 * n) - std::lgamma(n + l + 1.0));
  return std::exp(log_norm - 0.5 * rho) * std::pow(rho, l) * numerics::assoc_laguerre(n - l - 1, 2.0 * l + 1.0, rho);
}

}  // namespace qconfine::cha
