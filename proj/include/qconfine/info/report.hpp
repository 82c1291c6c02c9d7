#pragma once

#include <cmath>
#include <compare>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qconfine/info/measures.hpp"

namespace qconfine::info {

enum class Space { r, p, total };
enum class Order { E, I };

inline const char* to_string(Space s) {
  switch (s) {
    case Space::r: return "r";
    case Space::p: return "p";
    case Space::total: return "total";
  }
  return "?";
}

/// Disorder factor of a complexity: Shannon entropy, or Renyi entropy of
/// the given order.
struct Disorder {
  bool renyi = false;
  double lambda = 1.0;

  static Disorder shannon() { return {}; }
  static Disorder renyi_of(double lambda) { return {true, lambda}; }
  auto operator<=>(const Disorder&) const = default;
};

struct ComplexityKey {
  Order order = Order::E;
  Disorder disorder;
  double b = 1.0;
  Space space = Space::total;
  auto operator<=>(const ComplexityKey&) const = default;
};

/// Label such as "ES_b=1_total" or "IR(0.6)_b=0.666667_r".
inline std::string to_string(const ComplexityKey& k) {
  std::string s = k.order == Order::E ? "E" : "I";
  if (k.disorder.renyi) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "R(%g)", k.disorder.lambda);
    s += buf;
  } else {
    s += "S";
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "_b=%g_", k.b);
  return s + buf + to_string(k.space);
}

/// Renyi and Tsallis entropies of one order, net values in each space.
struct RenyiEntry {
  double r = 0.0, p = 0.0;
  double sum = 0.0;  ///< r + p at the same order
  double tsallis_r = 0.0, tsallis_p = 0.0;
};

struct BoundVerdicts {
  int dimension = 3;
  double bbm_bound = 0.0, bbm_slack = 0.0;
  bool bbm_ok = false;
  double alpha = 0.0, beta = 0.0;
  double renyi_lhs = 0.0, renyi_bound = 0.0, renyi_slack = 0.0;
  bool renyi_ok = false;
  bool renyi_checked = false;
};

/// Information-theoretic record of one state. Fields that were not computed
/// stay empty. For a one-dimensional system the net values equal the bare
/// ones and there is no angular part; for a central potential the net
/// values describe the full normalized 3D density.
struct InfoReport {
  int dimension = 3;

  std::optional<double> s_r, s_p, s_theta, s_net_r, s_net_p, s_total;
  std::map<double, RenyiEntry> renyi;
  std::optional<double> e_r, e_p, e_theta, e_net_r, e_net_p, e_total;
  std::optional<double> i_r, i_p;

  std::map<ComplexityKey, double> complexities;
  std::optional<BoundVerdicts> bounds;

  std::vector<std::string> warnings;
};

struct ReportOptions {
  std::vector<double> lambdas{0.6, 3.0};
  std::vector<double> b_values{1.0, 2.0 / 3.0};
  double alpha = 0.6, beta = 3.0;  ///< conjugate pair for the Renyi relation
};

namespace detail {

inline double need(const std::optional<double>& v, const char* what) {
  if (!v) throw Error(ErrorCode::incomplete_report, std::string("report lacks ") + what);
  return *v;
}

inline const RenyiEntry& need_renyi(const InfoReport& rep, double lambda) {
  const auto it = rep.renyi.find(lambda);
  if (it == rep.renyi.end())
    throw Error(ErrorCode::incomplete_report, "report lacks Renyi order " + std::to_string(lambda));
  return it->second;
}

}  // namespace detail

/// C = X e^{bY} with X the order factor (E or I) and Y the disorder (S or
/// R^lambda) of the chosen space; the total space multiplies the X factors
/// and adds the Y factors of both spaces.
inline double complexity(Order order, Disorder disorder, double b, const InfoReport& rep, Space space) {
  auto x_of = [&](Space s) {
    if (order == Order::E) return detail::need(s == Space::r ? rep.e_net_r : rep.e_net_p, "Onicescu energy");
    return detail::need(s == Space::r ? rep.i_r : rep.i_p, "Fisher information");
  };
  auto y_of = [&](Space s) {
    if (!disorder.renyi) return detail::need(s == Space::r ? rep.s_net_r : rep.s_net_p, "Shannon entropy");
    const auto& e = detail::need_renyi(rep, disorder.lambda);
    return s == Space::r ? e.r : e.p;
  };
  double x, y;
  if (space == Space::total) {
    x = x_of(Space::r) * x_of(Space::p);
    y = y_of(Space::r) + y_of(Space::p);
  } else {
    x = x_of(space);
    y = y_of(space);
  }
  return x * std::exp(b * y);
}

/// BBM inequality S_r + S_p >= D(1 + ln pi), and the Renyi relation
/// R_r^alpha + R_p^beta >= -(D/2)(ln alpha/(1-alpha) + ln beta/(1-beta)) + D ln pi
/// for 1/alpha + 1/beta = 2. The phase-space cell term is left out.
inline BoundVerdicts bound_checks(const InfoReport& rep, int dimension, double alpha, double beta) {
  require(dimension >= 1, ErrorCode::invalid_argument, "dimension must be positive");
  require(alpha > 0.0 && beta > 0.0 && alpha != 1.0 && beta != 1.0 &&
              std::abs(1.0 / alpha + 1.0 / beta - 2.0) <= 1e-12,
          ErrorCode::invalid_argument, "Renyi orders must satisfy 1/alpha + 1/beta = 2");
  const double d = dimension;
  const double ln_pi = std::log(std::numbers::pi);
  BoundVerdicts v;
  v.dimension = dimension;
  v.alpha = alpha;
  v.beta = beta;
  v.bbm_bound = d * (1.0 + ln_pi);
  v.bbm_slack = detail::need(rep.s_total, "total Shannon entropy") - v.bbm_bound;
  v.bbm_ok = v.bbm_slack >= 0.0;
  const auto ra = rep.renyi.find(alpha), rb = rep.renyi.find(beta);
  if (ra != rep.renyi.end() && rb != rep.renyi.end()) {
    v.renyi_checked = true;
    v.renyi_lhs = ra->second.r + rb->second.p;
    v.renyi_bound = -0.5 * d * (std::log(alpha) / (1.0 - alpha) + std::log(beta) / (1.0 - beta)) + d * ln_pi;
    v.renyi_slack = v.renyi_lhs - v.renyi_bound;
    v.renyi_ok = v.renyi_slack >= 0.0;
  }
  return v;
}

namespace detail {

inline void fill_complexities(InfoReport& rep, const ReportOptions& opt) {
  std::vector<Disorder> dis{Disorder::shannon()};
  for (double lam : opt.lambdas) dis.push_back(Disorder::renyi_of(lam));
  for (Order o : {Order::E, Order::I})
    for (const auto& d : dis)
      for (double b : opt.b_values)
        for (Space s : {Space::r, Space::p, Space::total}) {
          if (o == Order::I && (!rep.i_r || !rep.i_p)) continue;
          rep.complexities[{o, d, b, s}] = complexity(o, d, b, rep, s);
        }
}

inline void finish_report(InfoReport& rep, const ReportOptions& opt) {
  rep.s_total = *rep.s_net_r + *rep.s_net_p;
  rep.e_total = *rep.e_net_r * *rep.e_net_p;
  fill_complexities(rep, opt);
  rep.bounds = bound_checks(rep, rep.dimension, opt.alpha, opt.beta);
  for (double lam : opt.lambdas)
    if (lam <= 0.0 || lam == 1.0) rep.warnings.push_back("skipped Renyi order " + std::to_string(lam));
}

}  // namespace detail

/// Report for a hydrogenic state from its radial and momentum amplitudes.
inline InfoReport info_report(const cha::RadialState& st, const cha::MomentumState& ms, const ReportOptions& opt = {}) {
  InfoReport rep;
  rep.dimension = 3;
  const auto rho = radial_profile(st);
  const auto pi_p = momentum_profile(ms);
  const auto chi = angular_profile(st.l, st.m);

  const auto sr = shannon_net(rho, chi), sp = shannon_net(pi_p, chi);
  rep.s_r = sr.radial;
  rep.s_p = sp.radial;
  rep.s_theta = sr.theta;
  rep.s_net_r = sr.net;
  rep.s_net_p = sp.net;

  for (double lam : opt.lambdas) {
    if (lam <= 0.0 || lam == 1.0) continue;
    const auto mr = moment_net(rho, chi, lam);
    NetMoment mp;
    try {
      mp = moment_net(pi_p, chi, lam);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::divergent_integrand) throw;
      // omega_p is infinite, which sends both entropies to +inf for lambda < 1
      mp.renyi = mp.tsallis = std::numeric_limits<double>::infinity();
      rep.warnings.push_back("momentum moment of order " + std::to_string(lam) + " diverges");
    }
    rep.renyi[lam] = {mr.renyi, mp.renyi, mr.renyi + mp.renyi, mr.tsallis, mp.tsallis};
  }

  rep.e_r = onicescu(rho);
  rep.e_p = onicescu(pi_p);
  rep.e_theta = onicescu(chi);
  rep.e_net_r = onicescu_net(rho, chi);
  rep.e_net_p = onicescu_net(pi_p, chi);

  const auto f = fisher_central(st, st.m);
  rep.i_r = f.i_r;
  rep.i_p = f.i_p;

  if (ms.norm_defect > 1e-6) rep.warnings.push_back("momentum norm defect " + std::to_string(ms.norm_defect));
  detail::finish_report(rep, opt);
  return rep;
}

/// Report for a double-well eigenstate; all measures are one-dimensional.
inline InfoReport info_report(const dw::BasisSolution& sol, int state, const ReportOptions& opt = {}) {
  InfoReport rep;
  rep.dimension = 1;
  const auto x = dw_profile(sol, state, dw::Space::position);
  const auto p = dw_profile(sol, state, dw::Space::momentum);
  rep.s_r = rep.s_net_r = shannon(x);
  rep.s_p = rep.s_net_p = shannon(p);
  for (double lam : opt.lambdas) {
    if (lam <= 0.0 || lam == 1.0) continue;
    const double rx = renyi(x, lam), rp = renyi(p, lam);
    rep.renyi[lam] = {rx, rp, rx + rp, tsallis(x, lam), tsallis(p, lam)};
  }
  rep.e_r = rep.e_net_r = onicescu(x);
  rep.e_p = rep.e_net_p = onicescu(p);
  rep.i_r = fisher_1d(x);
  rep.i_p = fisher_1d(p);
  if (!sol.converged) rep.warnings.push_back(sol.warning);
  for (const auto* d : {&x, &p})
    if (d->normalization_defect > 1e-8)
      rep.warnings.push_back("normalization defect " + std::to_string(d->normalization_defect));
  detail::finish_report(rep, opt);
  return rep;
}

}  // namespace qconfine::info
