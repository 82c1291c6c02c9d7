#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "qconfine/cha/expectation.hpp"

namespace qconfine::virial {

/// The four expressions that the virial-like theorem equates for an
/// eigenstate of T + V:
///   var_T = <T^2> - <T>^2, var_V = <V^2> - <V>^2,
///   cross_TV = <T><V> - <TV>, cross_VT = <T><V> - <VT>.
struct VirialReport {
  int n = 0, l = 0;
  double z = 1.0, r_c = 0.0;
  double energy = 0.0;
  double mean_T = 0.0, mean_V = 0.0;
  double var_T = 0.0, var_V = 0.0, cross_TV = 0.0, cross_VT = 0.0;
  double var_T_operator = 0.0;  ///< <T^2> from applying -lap/2 on psi, as a diagnostic
  double max_mismatch = 0.0;
};

/// Builds the report. <T> comes from derivatives of psi and must reproduce
/// the energy together with <V>; otherwise the state does not belong to its
/// attached energy and stale-state is raised.
inline VirialReport virial_report(const cha::RadialState& st) {
  using cha::Observable;
  VirialReport rep;
  rep.n = st.n;
  rep.l = st.l;
  rep.z = st.z;
  rep.r_c = st.r_c;
  rep.energy = st.energy;
  rep.mean_T = cha::expectation(st, Observable::T);
  rep.mean_V = cha::expectation(st, Observable::V);
  const double e = st.energy;
  if (std::abs(rep.mean_T + rep.mean_V - e) > 1e-8 * std::max(1.0, std::abs(e)))
    throw Error(ErrorCode::stale_state, "<T> + <V> = " + std::to_string(rep.mean_T + rep.mean_V) +
                                            " does not match the attached energy " + std::to_string(e));
  const double v2 = cha::expectation(st, Observable::V2);
  const double tv = cha::expectation(st, Observable::TV);
  const double vt = cha::expectation(st, Observable::VT);
  const double t2 = e * e - 2.0 * e * rep.mean_V + v2;  // <(E - V)^2>
  const double t2_op = st.integrate([&](double r, double f, double df, double d2f) {
    const double t = cha::detail::kinetic_action(st.l, r, f, df, d2f);
    return t * t;
  });
  rep.var_T = t2 - rep.mean_T * rep.mean_T;
  rep.var_T_operator = t2_op - rep.mean_T * rep.mean_T;
  rep.var_V = v2 - rep.mean_V * rep.mean_V;
  rep.cross_TV = rep.mean_T * rep.mean_V - tv;
  rep.cross_VT = rep.mean_T * rep.mean_V - vt;
  const double vals[] = {rep.var_T, rep.var_V, rep.cross_TV, rep.cross_VT};
  for (double a : vals)
    for (double b : vals) rep.max_mismatch = std::max(rep.max_mismatch, std::abs(a - b));
  return rep;
}

}  // namespace qconfine::virial
