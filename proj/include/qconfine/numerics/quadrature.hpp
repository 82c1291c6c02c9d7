#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "qconfine/numerics/error.hpp"

namespace qconfine::numerics {

/// Nodes and positive weights of a quadrature rule on [a, b].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = 0.0;
  double b = 0.0;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }

  /// Appends another rule; used to assemble composite (panel) rules.
  void append(const Quadrature& other) {
    nodes.insert(nodes.end(), other.nodes.begin(), other.nodes.end());
    weights.insert(weights.end(), other.weights.begin(), other.weights.end());
    if (nodes.size() == other.nodes.size()) a = other.a;
    b = other.b;
  }
};

namespace detail {

// Reference rule on [-1, 1]. Roots of P_n found by Newton from the
// Tricomi-type initial guess; converges to machine precision for n < 1000.
inline std::pair<std::vector<double>, std::vector<double>> legendre_reference(std::size_t n) {
  std::vector<double> x(n), w(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * z * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Final derivative at the converged root.
    double p0 = 1.0, p1 = z;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * z * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
  return {std::move(x), std::move(w)};
}

}  // namespace detail

/// n-point Gauss-Legendre rule on [a, b]. Exact for polynomials of degree
/// up to 2n-1.
inline Quadrature gauss_legendre(std::size_t n, double a, double b) {
  require(n >= 1, ErrorCode::invalid_argument, "gauss_legendre: n must be >= 1");
  require(a < b, ErrorCode::invalid_argument, "gauss_legendre: need a < b");
  Quadrature q;
  q.a = a;
  q.b = b;
  if (n == 1) {
    q.nodes = {0.5 * (a + b)};
    q.weights = {b - a};
    return q;
  }
  auto [x, w] = detail::legendre_reference(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  q.nodes.resize(n);
  q.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    q.nodes[i] = mid + half * x[i];
    q.weights[i] = half * w[i];
  }
  return q;
}

/// Composite rule: each consecutive pair of breakpoints gets its own
/// n-point Gauss-Legendre panel.
inline Quadrature composite_gauss_legendre(std::span<const double> breaks, std::size_t n) {
  require(breaks.size() >= 2, ErrorCode::invalid_argument, "composite rule needs two breakpoints");
  auto [x, w] = detail::legendre_reference(n);
  Quadrature q;
  q.a = breaks.front();
  q.b = breaks.back();
  q.nodes.reserve((breaks.size() - 1) * n);
  q.weights.reserve((breaks.size() - 1) * n);
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double lo = breaks[p], hi = breaks[p + 1];
    require(lo < hi, ErrorCode::invalid_argument, "composite rule breakpoints must increase");
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < n; ++i) {
      q.nodes.push_back(n == 1 ? mid : mid + half * x[i]);
      q.weights.push_back(n == 1 ? hi - lo : half * w[i]);
    }
  }
  return q;
}

/// Equal-width panels on [a, b].
inline Quadrature uniform_panels(double a, double b, std::size_t panels, std::size_t n) {
  require(panels >= 1, ErrorCode::invalid_argument, "uniform_panels: need at least one panel");
  require(a < b, ErrorCode::invalid_argument, "uniform_panels: need a < b");
  std::vector<double> breaks(panels + 1);
  for (std::size_t i = 0; i <= panels; ++i)
    breaks[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(panels);
  breaks.back() = b;
  return composite_gauss_legendre(breaks, n);
}

/// Panels whose widths grow geometrically from `first_width` away from `a`;
/// suited to integrands concentrated near the left endpoint.
inline Quadrature graded_panels(double a, double b, double first_width, double ratio,
                                double max_width, std::size_t n) {
  require(a < b && first_width > 0.0 && ratio >= 1.0 && max_width > 0.0,
          ErrorCode::invalid_argument, "graded_panels: bad layout");
  std::vector<double> breaks{a};
  double width = first_width;
  while (breaks.back() < b) {
    breaks.push_back(std::min(b, breaks.back() + std::min(width, max_width)));
    width *= ratio;
  }
  return composite_gauss_legendre(breaks, n);
}

/// Splits every interval of `breaks` into equal parts no wider than
/// `max_width`.
inline std::vector<double> subdivide(std::span<const double> breaks, double max_width) {
  require(breaks.size() >= 2 && max_width > 0.0, ErrorCode::invalid_argument, "subdivide: bad layout");
  std::vector<double> out{breaks.front()};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = breaks[i], hi = breaks[i + 1];
    const auto parts = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / max_width - 1e-9)));
    for (std::size_t k = 1; k < parts; ++k) out.push_back(lo + (hi - lo) * static_cast<double>(k) / parts);
    out.push_back(hi);
  }
  return out;
}

/// Legendre-Gauss-Lobatto nodes (ascending, endpoints included) and weights
/// for polynomial degree n on [-1, 1]; exact to degree 2n - 1.
inline std::pair<std::vector<double>, std::vector<double>> gauss_lobatto(std::size_t n) {
  require(n >= 2, ErrorCode::invalid_argument, "gauss_lobatto: need degree >= 2");
  const std::size_t np = n + 1;
  std::vector<double> x(np), w(np);
  for (std::size_t i = 0; i < np; ++i) {
    double xi = -std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
    double pn = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = xi;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * xi * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      pn = p1;
      const double dx = (xi * p1 - p0) / (static_cast<double>(np) * p1);
      xi -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = xi;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * xi * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    pn = p1;
    x[i] = xi;
    w[i] = 2.0 / (static_cast<double>(n) * static_cast<double>(np) * pn * pn);
  }
  x.front() = -1.0;
  x.back() = 1.0;
  return {std::move(x), std::move(w)};
}

}  // namespace qconfine::numerics
