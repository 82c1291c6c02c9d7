#pragma once

#include <cmath>
#include <numbers>

#include "qconfine/cha/expectation.hpp"
#include "qconfine/info/density.hpp"

namespace qconfine::info {

inline constexpr double density_floor = 1e-300;

/// -int rho ln rho, with 0 ln 0 = 0.
inline double shannon(const DensityProfile& d) {
  return -d.integrate([](double v) { return v > 0.0 ? v * std::log(std::max(v, density_floor)) : 0.0; });
}

/// omega(lambda) = int rho^lambda, including the profile's asymptotic tail.
inline double entropic_moment(const DensityProfile& d, double lambda) {
  require(lambda > 0.0, ErrorCode::invalid_argument, "entropic moment order must be positive");
  const double body = d.integrate([lambda](double v) { return v > 0.0 ? std::pow(v, lambda) : 0.0; });
  return d.tail_moment ? body + d.tail_moment(lambda) : body;
}

inline double renyi(const DensityProfile& d, double lambda) {
  require(lambda > 0.0 && lambda != 1.0, ErrorCode::invalid_argument, "Renyi order must be positive and not 1");
  return std::log(entropic_moment(d, lambda)) / (1.0 - lambda);
}

inline double tsallis(const DensityProfile& d, double lambda) {
  require(lambda > 0.0 && lambda != 1.0, ErrorCode::invalid_argument, "Tsallis order must be positive and not 1");
  return (1.0 - entropic_moment(d, lambda)) / (lambda - 1.0);
}

/// Onicescu energy, the second entropic moment.
inline double onicescu(const DensityProfile& d) { return entropic_moment(d, 2.0); }

/// int rho'^2 / rho over the profile measure. Uses the stored d sqrt(rho)/ds
/// when present; otherwise differentiates rho on the grid (central
/// differences, one-sided at the ends).
inline double fisher_1d(const DensityProfile& d) {
  if (!d.amp_derivative.empty()) {
    double sum = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) sum += d.weights[i] * 4.0 * d.amp_derivative[i] * d.amp_derivative[i];
    return sum;
  }
  const std::size_t n = d.size();
  require(n >= 3, ErrorCode::resolution, "fisher_1d needs at least 3 points");
  const auto& x = d.grid;
  const auto& v = d.values;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double der;
    if (i == 0)
      der = (v[1] - v[0]) / (x[1] - x[0]);
    else if (i == n - 1)
      der = (v[n - 1] - v[n - 2]) / (x[n - 1] - x[n - 2]);
    else {
      const double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
      der = (h0 * h0 * v[i + 1] - h1 * h1 * v[i - 1] + (h1 * h1 - h0 * h0) * v[i]) / (h0 * h1 * (h0 + h1));
    }
    if (v[i] <= 0.0) {
      const bool interior = i > 0 && i + 1 < n;
      require(!(interior && std::abs(der) > 1e-12), ErrorCode::singular_density,
              "density vanishes at an interior point with non-zero slope");
      continue;
    }
    sum += d.weights[i] * der * der / v[i];
  }
  return sum;
}

/// Full 3D measures assembled from a radial profile and the polar density,
/// the azimuthal factor being uniform on [0, 2 pi).
struct NetShannon {
  double radial = 0.0, theta = 0.0, net = 0.0;
};
inline NetShannon shannon_net(const DensityProfile& radial, const DensityProfile& angular) {
  NetShannon s;
  s.radial = shannon(radial);
  s.theta = shannon(angular);
  s.net = s.radial + s.theta + std::log(2.0 * std::numbers::pi);
  return s;
}

struct NetMoment {
  double radial = 0.0, theta = 0.0;  ///< omega_r, omega_theta
  double omega = 0.0;                ///< moment of the full density
  double renyi = 0.0, tsallis = 0.0;
};
inline NetMoment moment_net(const DensityProfile& radial, const DensityProfile& angular, double lambda) {
  require(lambda > 0.0 && lambda != 1.0, ErrorCode::invalid_argument, "order must be positive and not 1");
  NetMoment m;
  m.radial = entropic_moment(radial, lambda);
  m.theta = entropic_moment(angular, lambda);
  const double two_pi = 2.0 * std::numbers::pi;
  m.omega = m.radial * m.theta * std::pow(two_pi, 1.0 - lambda);
  m.renyi = (std::log(m.radial) + std::log(m.theta)) / (1.0 - lambda) + std::log(two_pi);
  m.tsallis = (1.0 - m.omega) / (lambda - 1.0);
  return m;
}

inline double onicescu_net(const DensityProfile& radial, const DensityProfile& angular) {
  return onicescu(radial) * onicescu(angular) / (2.0 * std::numbers::pi);
}

struct FisherPair {
  double i_r = 0.0, i_p = 0.0;
};

/// Central-potential Fisher information of the (n, l, m) state from its
/// radial expectation values.
inline FisherPair fisher_central(const cha::RadialState& st, int m) {
  require(std::abs(m) <= st.l, ErrorCode::invalid_argument, "need |m| <= l");
  using cha::Observable;
  const double k = 2.0 * (2.0 * st.l + 1.0) * std::abs(m);
  FisherPair f;
  f.i_r = 4.0 * cha::expectation(st, Observable::p2);
  f.i_p = 4.0 * cha::expectation(st, Observable::r2);
  if (m != 0) {
    f.i_r -= k * cha::expectation(st, Observable::r_inv2);
    f.i_p -= k * cha::expectation(st, Observable::p_inv2);
  }
  return f;
}
inline FisherPair fisher_central(const cha::RadialState& st) { return fisher_central(st, st.m); }

/// Closed forms for the free atom.
inline FisherPair fisher_fha_closed(int n, int l, int m, double z = 1.0) {
  require(l >= 0 && n >= l + 1 && std::abs(m) <= l && z > 0.0, ErrorCode::invalid_argument,
          "need n >= l + 1, |m| <= l, z > 0");
  const double nn = n, am = std::abs(m);
  FisherPair f;
  f.i_r = 4.0 * z * z / (nn * nn) * (1.0 - am / nn);
  f.i_p = 2.0 * nn * nn / (z * z) * ((5.0 * nn * nn + 1.0 - 3.0 * l * (l + 1.0)) - am * (8.0 * nn - 6.0 * l - 3.0));
  return f;
}

}  // namespace qconfine::info
