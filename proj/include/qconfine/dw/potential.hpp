#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qconfine/numerics/error.hpp"

namespace qconfine::dw {

/// Quartic double well V(x) = alpha x^4 - beta x^2 + gamma x + v0 with the
/// kinetic operator -d^2/dx^2.
struct PotentialSpec {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
  double v0 = 0.0;

  bool symmetric() const { return gamma == 0.0; }
  double operator()(double x) const {
    const double x2 = x * x;
    return alpha * x2 * x2 - beta * x2 + gamma * x + v0;
  }
  double derivative(double x) const { return 4.0 * alpha * x * x * x - 2.0 * beta * x + gamma; }
  double second_derivative(double x) const { return 12.0 * alpha * x * x - 2.0 * beta; }
};

/// Real roots of V'(x) = 4 alpha x^3 - 2 beta x + gamma, ascending.
inline std::vector<double> stationary_points(const PotentialSpec& v) {
  const double p = -v.beta / (2.0 * v.alpha), q = v.gamma / (4.0 * v.alpha);  // x^3 + p x + q
  std::vector<double> roots;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  if (disc > 0.0) {
    const double r = std::sqrt(disc);
    roots.push_back(std::cbrt(-q / 2.0 + r) + std::cbrt(-q / 2.0 - r));
  } else if (p == 0.0) {
    roots.push_back(0.0);
  } else {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double theta = std::acos(std::clamp(3.0 * q / (p * m), -1.0, 1.0)) / 3.0;
    for (int k = 0; k < 3; ++k) roots.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0));
  }
  for (double& x : roots) {
    for (int iter = 0; iter < 6; ++iter) {
      const double d2 = v.second_derivative(x);
      if (d2 == 0.0) break;
      x -= v.derivative(x) / d2;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Minimum of alpha x^4 - beta x^2 + gamma x over the real line.
inline double global_minimum(const PotentialSpec& v) {
  PotentialSpec bare = v;
  bare.v0 = 0.0;
  double best = bare(0.0);
  for (double x : stationary_points(v)) best = std::min(best, bare(x));
  return best;
}

/// Potential with the offset chosen so that its global minimum is zero. For
/// gamma = 0 this is beta^2 / (4 alpha) when beta > 0.
inline PotentialSpec make_potential(double alpha, double beta, double gamma = 0.0) {
  require(alpha > 0.0, ErrorCode::invalid_argument, "alpha must be positive");
  PotentialSpec v{alpha, beta, gamma, 0.0};
  if (gamma == 0.0)
    v.v0 = beta > 0.0 ? beta * beta / (4.0 * alpha) : 0.0;
  else
    v.v0 = -global_minimum(v);
  return v;
}

/// The mirror partner V(-x), obtained by flipping the sign of gamma.
inline PotentialSpec mirror(const PotentialSpec& v) { return {v.alpha, v.beta, -v.gamma, v.v0}; }

/// Interior barrier between the two wells.
struct Barrier {
  double x_max;     ///< abscissa of the local maximum of V
  double x_deep;    ///< abscissa of the deeper minimum (well I)
  double x_shallow; ///< abscissa of the shallower minimum (well II)
  double height;    ///< V(x_max)
};

/// Locates the barrier by Newton iteration on V'. Raises not-double-well when
/// V has a single minimum.
inline Barrier find_barrier(const PotentialSpec& v) {
  require(v.beta > 0.0, ErrorCode::not_double_well, "beta <= 0 gives a single well");
  const auto pts = stationary_points(v);
  require(pts.size() == 3, ErrorCode::not_double_well, "potential has no interior barrier");
  Barrier b{};
  b.x_max = pts[1];
  const bool left_deeper = v(pts[0]) <= v(pts[2]);
  b.x_deep = left_deeper ? pts[0] : pts[2];
  b.x_shallow = left_deeper ? pts[2] : pts[0];
  b.height = v(b.x_max);
  return b;
}

}  // namespace qconfine::dw
