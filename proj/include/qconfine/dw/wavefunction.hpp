#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "qconfine/dw/solver.hpp"
#include "qconfine/numerics/polynomials.hpp"
#include "qconfine/numerics/quadrature.hpp"

namespace qconfine::dw {

/// Amplitude of a state at one abscissa together with its derivative. In
/// momentum space the amplitude is complex; `re`/`im` hold the real and
/// imaginary parts.
struct Sample {
  double re = 0.0, im = 0.0;
  double dre = 0.0, dim = 0.0;

  double density() const { return re * re + im * im; }
  /// d|psi|/ds, finite at nodes of a real amplitude.
  double abs_derivative() const {
    const double a = std::sqrt(density());
    if (a == 0.0) return std::sqrt(dre * dre + dim * dim);
    return (re * dre + im * dim) / a;
  }
};

/// Abscissa beyond which every basis function (and so every state) is
/// negligible: the classical turning point of the highest basis function
/// plus ten Gaussian widths.
inline double support_extent(const BasisSolution& sol, Space space) {
  const double reach = std::sqrt(2.0 * sol.n_basis + 1.0) + 10.0;
  const double s = std::sqrt(2.0 * sol.sigma);
  return space == Space::position ? reach / s : reach * s;
}

/// Evaluates state `state` at the abscissae in `grid` without any checks.
inline std::vector<Sample> sample_state(const BasisSolution& sol, int state, std::span<const double> grid,
                                        Space space) {
  require(state >= 0 && state < sol.n_basis, ErrorCode::invalid_argument, "state index out of range");
  const double s2 = 2.0 * sol.sigma;
  const double scale = space == Space::position ? std::sqrt(s2) : 1.0 / std::sqrt(s2);
  const double amp = space == Space::position ? std::pow(s2, 0.25) : std::pow(s2, -0.25);
  const auto b = sol.coeffs.col(state);
  std::vector<Sample> out(grid.size());
  std::vector<double> h, dh;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    numerics::hermite_functions(grid[i] * scale, sol.n_basis, h, &dh);
    Sample& smp = out[i];
    if (space == Space::position) {
      for (int m = 0; m < sol.n_basis; ++m) {
        smp.re += b(m) * h[m];
        smp.dre += b(m) * dh[m];
      }
    } else {
      // Coefficients (-i)^m b_m: even m feed the real part, odd m the imaginary.
      for (int m = 0; m < sol.n_basis; ++m) {
        const double sign = ((m / 2) % 2 == 0) ? 1.0 : -1.0;
        if (m % 2 == 0) {
          smp.re += sign * b(m) * h[m];
          smp.dre += sign * b(m) * dh[m];
        } else {
          smp.im -= sign * b(m) * h[m];
          smp.dim -= sign * b(m) * dh[m];
        }
      }
    }
    smp.re *= amp;
    smp.im *= amp;
    smp.dre *= amp * scale;
    smp.dim *= amp * scale;
  }
  return out;
}

/// Wavefunction values on `grid` (ascending). Raises normalization-deficit
/// when the grid ends where the state is still non-negligible.
inline std::vector<std::complex<double>> eval_wavefunction(const BasisSolution& sol, int state,
                                                           std::span<const double> grid,
                                                           Space space = Space::position) {
  require(grid.size() >= 2, ErrorCode::invalid_argument, "eval_wavefunction: grid too small");
  const auto samples = sample_state(sol, state, grid, space);
  std::vector<std::complex<double>> out(samples.size());
  double peak = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out[i] = {samples[i].re, samples[i].im};
    peak = std::max(peak, std::abs(out[i]));
  }
  const double edge = std::max(std::abs(out.front()), std::abs(out.back()));
  require(edge <= 1e-6 * peak, ErrorCode::normalization_deficit,
          "grid does not cover the support of the state (edge amplitude " + std::to_string(edge / peak) +
              " of peak)");
  return out;
}

/// Composite Gauss-Legendre rule covering the support of all states.
inline numerics::Quadrature support_quadrature(const BasisSolution& sol, Space space, int panels = 160,
                                               int order = 16) {
  const double x = support_extent(sol, space);
  return numerics::uniform_panels(-x, x, panels, order);
}

/// Number of sign changes of psi once points with |psi| below
/// threshold * max|psi| are dropped.
inline int count_effective_nodes(const BasisSolution& sol, int state, double threshold = 0.2,
                                 int n_points = 6001) {
  require(threshold > 0.0, ErrorCode::invalid_argument, "node threshold must be positive");
  const double x = support_extent(sol, Space::position);
  std::vector<double> grid(n_points);
  for (int i = 0; i < n_points; ++i) grid[i] = -x + 2.0 * x * i / (n_points - 1);
  const auto s = sample_state(sol, state, grid, Space::position);
  double peak = 0.0;
  for (const auto& v : s) peak = std::max(peak, std::abs(v.re));
  int nodes = 0, last_sign = 0;
  for (const auto& v : s) {
    if (std::abs(v.re) < threshold * peak) continue;
    const int sign = v.re > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++nodes;
    last_sign = sign;
  }
  return nodes;
}

enum class Well { I, II, both };

inline const char* to_string(Well w) {
  switch (w) {
    case Well::I: return "I";
    case Well::II: return "II";
    case Well::both: return "both";
  }
  return "?";
}

struct Occupancy {
  double frac_I = 0.0;   ///< probability in the deeper well
  double frac_II = 0.0;  ///< probability in the shallower well
  double barrier_x = 0.0;
  Well label = Well::both;  ///< I or II when that fraction exceeds 0.9
};

/// Splits the probability of a state at the barrier maximum.
inline Occupancy well_occupancy(const BasisSolution& sol, int state, const PotentialSpec& spec) {
  const Barrier bar = find_barrier(spec);
  const double x = support_extent(sol, Space::position);
  require(bar.x_max > -x && bar.x_max < x, ErrorCode::not_double_well, "barrier outside the basis support");
  const auto left = numerics::uniform_panels(-x, bar.x_max, 80, 16);
  const auto right = numerics::uniform_panels(bar.x_max, x, 80, 16);
  auto mass = [&](const numerics::Quadrature& q) {
    const auto s = sample_state(sol, state, q.nodes, Space::position);
    double m = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) m += q.weights[i] * s[i].density();
    return m;
  };
  const double ml = mass(left), mr = mass(right);
  const bool left_deep = bar.x_deep < bar.x_max;
  Occupancy occ;
  occ.barrier_x = bar.x_max;
  occ.frac_I = (left_deep ? ml : mr) / (ml + mr);
  occ.frac_II = 1.0 - occ.frac_I;
  if (occ.frac_I > 0.9)
    occ.label = Well::I;
  else if (occ.frac_II > 0.9)
    occ.label = Well::II;
  return occ;
}

}  // namespace qconfine::dw
