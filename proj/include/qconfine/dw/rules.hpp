#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "qconfine/dw/wavefunction.hpp"

// Rule engines for the asymmetric well, in terms of the asymmetry index
// k = gamma / delta_gamma and the state index n.

namespace qconfine::dw {

namespace detail {
inline bool is_integer(double k) { return std::abs(k - std::round(k)) < 1e-12; }
}  // namespace detail

/// Partner state with which state n is quasi-degenerate, if any.
inline std::optional<int> predict_quasi_degeneracy(double k, int n) {
  require(k >= 0.0, ErrorCode::invalid_argument, "k must be non-negative");
  if (n < k) return std::nullopt;
  if (!detail::is_integer(k)) return std::nullopt;
  const long ki = std::lround(k);
  // Odd k pairs odd n with n+1; even k pairs even n with n+1.
  if ((n % 2) == (ki % 2)) return n + 1;
  return std::nullopt;
}

/// Well in which state n is expected to reside below the barrier top.
inline Well predict_localization(double k, int n) {
  require(k >= 0.0, ErrorCode::invalid_argument, "k must be non-negative");
  if (n < k) return Well::I;
  if (detail::is_integer(k)) return Well::both;
  const long floor_k = static_cast<long>(std::floor(k));
  return (n % 2) == (floor_k % 2) ? Well::I : Well::II;
}

struct TransitionSweep {
  std::vector<double> gammas;  ///< transition points, ascending
  double spacing = std::numeric_limits<double>::quiet_NaN();  ///< median gap, NaN with < 2 points
};

/// Sweeps gamma over [gamma_lo, gamma_hi] with the given step and records
/// where the occupancy label of `state` changes between wells. A stretch
/// classified as "both" between two definite labels is bridged, and the
/// crossing is refined by bisection on frac_I = 1/2. A definite label that
/// appears after a delocalized start (gamma = 0) counts as a transition at
/// the first such sample pair.
inline TransitionSweep detect_transitions(double alpha, double beta, double gamma_lo, double gamma_hi,
                                          double step, int state, int n_basis = 100) {
  require(step > 0.0 && step <= 0.05, ErrorCode::invalid_argument, "gamma step must be in (0, 0.05]");
  require(gamma_hi > gamma_lo, ErrorCode::invalid_argument, "empty gamma range");
  auto occupancy_at = [&](double g) {
    const PotentialSpec spec = make_potential(alpha, beta, g);
    return well_occupancy(solve(spec, n_basis, false), state, spec);
  };
  const int steps = static_cast<int>(std::ceil((gamma_hi - gamma_lo) / step - 1e-9));
  std::vector<double> gs(steps + 1);
  std::vector<Occupancy> occ(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    gs[i] = std::min(gamma_hi, gamma_lo + i * step);
    occ[i] = occupancy_at(gs[i]);
  }

  TransitionSweep out;
  int last_definite = -1;
  for (int i = 0; i <= steps; ++i) {
    if (occ[i].label == Well::both) continue;
    if (last_definite < 0) {
      if (i > 0) out.gammas.push_back(0.5 * (gs[i - 1] + gs[i]));
    } else if (occ[i].label != occ[last_definite].label) {
      double lo = gs[last_definite], hi = gs[i];
      const bool lo_in_I = occ[last_definite].label == Well::I;
      for (int it = 0; it < 30 && hi - lo > 1e-6; ++it) {
        const double mid = 0.5 * (lo + hi);
        const bool in_I = occupancy_at(mid).frac_I > 0.5;
        (in_I == lo_in_I ? lo : hi) = mid;
      }
      out.gammas.push_back(0.5 * (lo + hi));
    }
    last_definite = i;
  }
  if (out.gammas.size() >= 2) {
    std::vector<double> gaps;
    for (std::size_t i = 1; i < out.gammas.size(); ++i) gaps.push_back(out.gammas[i] - out.gammas[i - 1]);
    std::sort(gaps.begin(), gaps.end());
    const std::size_t m = gaps.size();
    out.spacing = m % 2 ? gaps[m / 2] : 0.5 * (gaps[m / 2 - 1] + gaps[m / 2]);
  }
  return out;
}

}  // namespace qconfine::dw
