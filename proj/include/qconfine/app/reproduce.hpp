#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "qconfine/app/config.hpp"
#include "qconfine/app/jobs.hpp"
#include "qconfine/app/table.hpp"
#include "qconfine/cha/collocation.hpp"
#include "qconfine/dw/rules.hpp"
#include "qconfine/info/relative_fisher.hpp"
#include "qconfine/info/report.hpp"
#include "qconfine/virial/virial.hpp"

namespace qconfine::app {

#ifdef QCONFINE_DATA_DIR
inline const char* default_reference_path = QCONFINE_DATA_DIR "/reference_values.json";
#else
inline const char* default_reference_path = "data/reference_values.json";
#endif

inline nlohmann::json load_reference(const std::string& path = default_reference_path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::invalid_argument, "cannot open reference data " + path);
  return nlohmann::json::parse(in);
}

/// One compared cell. `error` is the quantity held against `tolerance`
/// (absolute or relative difference, or the shortfall for a lower bound).
struct CellCheck {
  std::string table, row, column;
  Cell computed, expected;
  double error = 0.0;
  std::string tolerance_kind;  ///< relative, absolute, exact, lower-bound
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

inline CellCheck compare_relative(std::string table, std::string row, std::string column, double computed,
                                  double expected, double tol) {
  const double err = std::abs(computed - expected) / std::max(std::abs(expected), 1e-300);
  return {std::move(table), std::move(row), std::move(column), computed, expected, err, "relative", tol,
          std::isfinite(err) && err <= tol, ""};
}

inline CellCheck compare_absolute(std::string table, std::string row, std::string column, double computed,
                                  double expected, double tol) {
  const double err = std::abs(computed - expected);
  return {std::move(table), std::move(row), std::move(column), computed, expected, err, "absolute", tol,
          std::isfinite(err) && err <= tol, ""};
}

inline CellCheck compare_exact(std::string table, std::string row, std::string column, Cell computed, Cell expected) {
  const bool ok = cell_text(computed) == cell_text(expected);
  return {std::move(table), std::move(row), std::move(column), computed, expected, ok ? 0.0 : 1.0, "exact", 0.0, ok,
          ""};
}

inline CellCheck compare_lower_bound(std::string table, std::string row, std::string column, double computed,
                                     double bound) {
  const double shortfall = std::max(0.0, bound - computed);
  return {std::move(table), std::move(row), std::move(column), computed, bound, shortfall, "lower-bound", 0.0,
          computed >= bound, ""};
}

inline std::string rc_label(double rc) { return std::isinf(rc) ? "inf" : format_number(rc); }

inline double json_radius(const nlohmann::json& v) {
  return v.is_string() ? parse_real(v.get<std::string>()) : v.get<double>();
}

inline const std::vector<std::string>& reproduce_ids() {
  static const std::vector<std::string> ids{"T1", "T2", "T3", "T4", "T5", "T6", "T7",
                                            "sdw-constants", "degeneracy", "oracle", "cross-validation"};
  return ids;
}

/// Recomputes the tabulated reference values and compares them cell by
/// cell. States shared between tables are computed once.
class Reproducer {
 public:
  explicit Reproducer(nlohmann::json data, int jobs = 1) : data_(std::move(data)), jobs_(jobs) {}

  std::vector<CellCheck> run(const std::string& id) {
    if (id == "T1") return table1();
    if (id == "T2") return table2();
    if (id == "T3") return table3();
    if (id == "T4") return table4();
    if (id == "T5") return table5();
    if (id == "T6") return table6();
    if (id == "T7") return table7();
    if (id == "sdw-constants") return sdw_constants();
    if (id == "degeneracy") return degeneracy();
    if (id == "oracle") return oracle();
    if (id == "cross-validation") return cross_validation();
    throw Error(ErrorCode::invalid_argument, "unknown table id '" + id + "'");
  }

  /// Radial state, momentum transform and information report of (n, l) at r_c.
  struct StateBundle {
    cha::RadialState radial;
    cha::MomentumState momentum;
    info::InfoReport report;
  };

  const StateBundle& bundle(int n, int l, double rc) {
    const auto key = std::make_tuple(n, l, rc);
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    StateBundle b;
    b.radial = cha::cha_wavefunction(n, l, rc);
    b.momentum = cha::momentum_transform(b.radial);
    info::ReportOptions opt;
    opt.lambdas = {0.6, 3.0};
    b.report = info::info_report(b.radial, b.momentum, opt);
    std::lock_guard lock(mutex_);
    return cache_.emplace(key, std::move(b)).first->second;
  }

  /// Warms the cache for a list of (n, l, r_c) in parallel.
  void prefetch(const std::vector<std::tuple<int, int, double>>& states) {
    parallel_map(
        states, [this](const auto& s) { return &bundle(std::get<0>(s), std::get<1>(s), std::get<2>(s)); }, jobs_);
  }

  const nlohmann::json& table_data(const std::string& id) const { return data_.at("tables").at(id); }

 private:
  nlohmann::json data_;
  int jobs_ = 1;
  std::mutex mutex_;
  std::map<std::tuple<int, int, double>, StateBundle> cache_;

  std::vector<std::tuple<int, int, double>> density_states(const std::string& id) const {
    std::vector<std::tuple<int, int, double>> out;
    for (const auto& row : table_data(id).at("rows")) {
      const auto st = parse_state(row.at("state").get<std::string>());
      out.emplace_back(st.n, st.l, json_radius(row.at("r_c")));
    }
    return out;
  }

  std::vector<CellCheck> table1() {
    const auto& t = table_data("T1");
    const double alpha = t.at("alpha"), beta = t.at("beta");
    // The spacing of localization transitions sets the asymmetry scale.
    const auto sweep = dw::detect_transitions(alpha, beta, 0.0, 8.5, 0.05, 1);
    const double dgamma = sweep.spacing;
    std::vector<std::pair<int, double>> samples;
    for (int r = 0; r < 4; ++r)
      for (double f : {0.25, 0.5, 0.75}) samples.emplace_back(r, r + f);
    auto rows = parallel_map(
        samples,
        [&](const std::pair<int, double>& s) {
          const auto [r, k] = s;
          const auto spec = dw::make_potential(alpha, beta, k * dgamma);
          const auto sol = dw::solve(spec, 100, false);
          std::vector<CellCheck> cells;
          for (int n = 0; n < 6; ++n) {
            const std::string row = "k=" + format_number(k) + " n=" + std::to_string(n);
            const auto occ = dw::well_occupancy(sol, n, spec);
            const std::string want = t.at("well")[r][n];
            cells.push_back(compare_exact("T1", row, "well", std::string(dw::to_string(occ.label)), want));
            cells.push_back(compare_exact("T1", row, "nodes", static_cast<long long>(dw::count_effective_nodes(sol, n)),
                                          t.at("nodes")[r][n].get<long long>()));
            cells.push_back(compare_exact("T1", row, "predicted-well",
                                          std::string(dw::to_string(dw::predict_localization(k, n))),
                                          std::string(dw::to_string(occ.label))));
          }
          return cells;
        },
        jobs_);
    std::vector<CellCheck> out;
    for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    for (auto& c : out) c.note = "delta_gamma=" + format_number(dgamma);
    return out;
  }

  std::vector<CellCheck> table2() {
    const auto& t = table_data("T2");
    const double tol = t.at("tolerance").at("relative");
    const auto states = density_states("T2");
    auto pairs = parallel_map(
        states,
        [](const auto& s) {
          const auto st = cha::cha_wavefunction(std::get<0>(s), std::get<1>(s), std::get<2>(s));
          return info::fisher_central(st, 0);
        },
        jobs_);
    std::vector<CellCheck> out;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto& row = t.at("rows")[i];
      const std::string label = row.at("state").get<std::string>() + " r_c=" + rc_label(std::get<2>(states[i]));
      out.push_back(compare_relative("T2", label, "I_r", pairs[i].i_r, row.at("I_r"), tol));
      out.push_back(compare_relative("T2", label, "I_p", pairs[i].i_p, row.at("I_p"), tol));
    }
    const auto& free = t.at("free");
    const double ftol = free.at("tolerance").at("relative");
    for (const auto& row : free.at("rows")) {
      const auto q = parse_state(row.at("state").get<std::string>());
      const auto f = info::fisher_central(cha::cha_wavefunction(q.n, q.l, cha::infinite_radius), 0);
      const std::string label = row.at("state").get<std::string>() + " free";
      out.push_back(compare_relative("T2", label, "I_r", f.i_r, row.at("I_r"), ftol));
      out.push_back(compare_relative("T2", label, "I_p", f.i_p, row.at("I_p"), ftol));
    }
    return out;
  }

  std::vector<CellCheck> table3() {
    const auto& t = table_data("T3");
    const double tol = t.at("tolerance").at("absolute");
    const double a = t.at("alpha"), b = t.at("beta");
    const auto states = density_states("T3");
    prefetch(states);
    std::vector<CellCheck> out;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto& row = t.at("rows")[i];
      const auto& rep = bundle(std::get<0>(states[i]), std::get<1>(states[i]), std::get<2>(states[i])).report;
      const std::string label = row.at("state").get<std::string>() + " r_c=" + rc_label(std::get<2>(states[i]));
      const double ra = rep.renyi.at(a).r, rb = rep.renyi.at(b).p;
      out.push_back(compare_absolute("T3", label, "R_r", ra, row.at("R_r"), tol));
      out.push_back(compare_absolute("T3", label, "R_p", rb, row.at("R_p"), tol));
      out.push_back(compare_absolute("T3", label, "R_sum", ra + rb, row.at("R_sum"), tol));
    }
    const auto& fl = t.at("free_limit");
    const double lam = fl.at("lambda");
    const auto& rep = bundle(1, 0, cha::infinite_radius).report;
    const double closed = std::log(std::numbers::pi) - 3.0 * std::log(lam) / (1.0 - lam);
    out.push_back(compare_absolute("T3", "1s free", "R_r closed form", rep.renyi.at(lam).r, closed,
                                   fl.at("tolerance").at("absolute")));
    return out;
  }

  std::vector<CellCheck> table4() {
    const auto& t = table_data("T4");
    const double tol = t.at("tolerance").at("absolute");
    const double bbm = t.at("bbm_threshold");
    const auto states = density_states("T4");
    prefetch(states);
    std::vector<CellCheck> out;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto& row = t.at("rows")[i];
      const auto& rep = bundle(std::get<0>(states[i]), std::get<1>(states[i]), std::get<2>(states[i])).report;
      const std::string label = row.at("state").get<std::string>() + " r_c=" + rc_label(std::get<2>(states[i]));
      out.push_back(compare_absolute("T4", label, "S_r", *rep.s_net_r, row.at("S_r"), tol));
      out.push_back(compare_absolute("T4", label, "S_p", *rep.s_net_p, row.at("S_p"), tol));
      out.push_back(compare_absolute("T4", label, "S_total", *rep.s_total, row.at("S_total"), tol));
      out.push_back(compare_lower_bound("T4", label, "S_total >= BBM", *rep.s_total, bbm));
    }
    return out;
  }

  std::vector<CellCheck> table5() {
    const auto& t = table_data("T5");
    const auto& tol = t.at("tolerance");
    const double rel = tol.at("relative"), small_abs = tol.at("absolute_small"), small = tol.at("small_below");
    auto cmp = [&](const std::string& label, const std::string& col, double got, double want) {
      return std::abs(want) < small ? compare_absolute("T5", label, col, got, want, small_abs)
                                    : compare_relative("T5", label, col, got, want, rel);
    };
    const auto states = density_states("T5");
    prefetch(states);
    std::vector<CellCheck> out;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto& row = t.at("rows")[i];
      const auto& rep = bundle(std::get<0>(states[i]), std::get<1>(states[i]), std::get<2>(states[i])).report;
      const std::string label = row.at("state").get<std::string>() + " r_c=" + rc_label(std::get<2>(states[i]));
      out.push_back(cmp(label, "E_r", *rep.e_net_r, row.at("E_r")));
      out.push_back(cmp(label, "E_p", *rep.e_net_p, row.at("E_p")));
    }
    const auto& rep = bundle(1, 0, cha::infinite_radius).report;
    out.push_back(compare_absolute("T5", "1s free", "E_r closed form", *rep.e_net_r, 1.0 / (8.0 * std::numbers::pi),
                                   t.at("free_limit").at("tolerance").at("absolute")));
    return out;
  }

  std::vector<CellCheck> table6() {
    const auto& t = table_data("T6");
    const double tol = t.at("tolerance").at("relative");
    std::vector<StateLabel> states;
    for (const auto& row : t.at("rows")) states.push_back(parse_state(row.at("state").get<std::string>()));
    auto numeric = parallel_map(
        states,
        [](const StateLabel& s) {
          const auto st = cha::cha_wavefunction(s.n, s.l, cha::infinite_radius);
          return info::relative_fisher_numeric(st, info::circular_reference(s.n, s.l)).ir_r;
        },
        jobs_);
    std::vector<CellCheck> out;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto& row = t.at("rows")[i];
      const std::string label = row.at("state");
      const auto closed = info::relative_fisher_closed(states[i].n, states[i].l);
      const auto& printed = row.at("IR_r");
      const auto& want = row.contains("erratum") ? row.at("erratum").at("IR_r") : printed;
      const auto rat = [](long long a, long long b) { return std::to_string(a) + "/" + std::to_string(b); };
      auto exact = compare_exact("T6", label, "IR_r closed", rat(closed.ir_r_rational.num, closed.ir_r_rational.den),
                                 rat(want.at("num"), want.at("den")));
      if (row.contains("erratum"))
        exact.note = "printed " + rat(printed.at("num"), printed.at("den")) + "; " +
                     row.at("erratum").at("note").get<std::string>();
      out.push_back(exact);
      out.push_back(compare_relative("T6", label, "IR_r numeric", numeric[i], closed.ir_r, tol));
    }
    for (int l : t.at("argmax_even_l").get<std::vector<int>>()) {
      const std::string label = "l=" + std::to_string(l);
      const int n = info::relative_fisher_argmax(l);
      out.push_back(compare_exact("T6", label, "argmax n", static_cast<long long>(n),
                                  static_cast<long long>((3 * l + 4) / 2)));
      const double peak = 32.0 * (l + 2.0) / std::pow(3.0 * l + 4.0, 3);
      out.push_back(compare_relative("T6", label, "max IR_r", info::relative_fisher_closed(n, l).ir_r, peak, 1e-14));
    }
    return out;
  }

  std::vector<CellCheck> table7() {
    const auto& t = table_data("T7");
    const auto& tol = t.at("tolerance");
    const double etol = tol.at("energy_relative"), vtol = tol.at("variance_relative"), ctol = tol.at("chain_relative");
    std::vector<std::tuple<int, int, double>> states = density_states("T7");
    auto reports = parallel_map(
        states,
        [](const auto& s) {
          return virial::virial_report(cha::cha_wavefunction(std::get<0>(s), std::get<1>(s), std::get<2>(s)));
        },
        jobs_);
    std::vector<CellCheck> out;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto& row = t.at("rows")[i];
      const auto& v = reports[i];
      const std::string label = row.at("state").get<std::string>() + " r_c=" + rc_label(std::get<2>(states[i]));
      auto e = compare_relative("T7", label, "E", v.energy, row.at("E_reference"), etol);
      if (row.contains("erratum")) e.note = row.at("erratum").at("E_table");
      out.push_back(e);
      out.push_back(compare_relative("T7", label, "var_V", v.var_V, row.at("var_V"), vtol));
      out.push_back(compare_relative("T7", label, "var_T", v.var_T, row.at("var_T"), vtol));
      out.push_back(compare_relative("T7", label, "cross_TV", v.cross_TV, row.at("cross_TV"), vtol));
      out.push_back(compare_relative("T7", label, "cross_VT", v.cross_VT, row.at("cross_VT"), vtol));
      CellCheck chain{"T7", label, "equality chain", v.max_mismatch / v.var_V, 0.0, v.max_mismatch / v.var_V,
                      "relative", ctol, v.max_mismatch / v.var_V <= ctol, ""};
      out.push_back(chain);
    }
    return out;
  }

  std::vector<CellCheck> sdw_constants() {
    const auto& t = table_data("sdw-constants");
    const double alpha = t.at("alpha"), beta_to = t.at("beta_to"), step = t.at("beta_step");
    const double b = t.at("os_exponent");
    std::vector<CellCheck> out;
    for (const auto& pair : t.at("pairs")) {
      const auto states = pair.at("states").get<std::vector<int>>();
      const double from = pair.at("beta_from");
      std::vector<double> betas;
      for (long i = 0;; ++i) {
        const double beta = from + static_cast<double>(i) * step;
        if (beta > beta_to + 1e-9) break;
        betas.push_back(beta);
      }
      auto sweep = parallel_map(
          betas,
          [&](double beta) {
            const auto sol = dw::solve(dw::make_potential(alpha, beta), 100);
            std::vector<std::array<double, 3>> vals;
            for (int s : states) {
              const auto rep = info::info_report(sol, s);
              vals.push_back({*rep.s_total, *rep.e_total,
                              info::complexity(info::Order::E, info::Disorder::shannon(), b, rep, info::Space::total)});
            }
            return vals;
          },
          jobs_);
      const std::string row = "states " + std::to_string(states[0]) + "," + std::to_string(states[1]) +
                              " beta>=" + format_number(from);
      const char* names[3] = {"S_net", "E_net", "OS"};
      for (int q = 0; q < 3; ++q) {
        const double target = pair.at(names[q])[0], tol = pair.at(names[q])[1];
        double worst = target, worst_err = -1.0, worst_beta = from;
        int worst_state = states[0];
        for (std::size_t i = 0; i < betas.size(); ++i)
          for (std::size_t s = 0; s < states.size(); ++s) {
            const double v = sweep[i][s][static_cast<std::size_t>(q)];
            if (std::abs(v - target) > worst_err) {
              worst_err = std::abs(v - target);
              worst = v;
              worst_beta = betas[i];
              worst_state = states[s];
            }
          }
        auto c = compare_absolute("sdw-constants", row, names[q], worst, target, tol);
        c.note = "largest deviation at beta=" + format_number(worst_beta) + " state " + std::to_string(worst_state);
        if (q == 2) c.note += "; b=" + format_number(b);
        out.push_back(c);
      }
    }
    return out;
  }

  std::vector<CellCheck> degeneracy() {
    const auto& t = table_data("degeneracy");
    const double tol = t.at("tolerance").at("absolute");
    std::vector<CellCheck> out;
    for (const auto& p : t.at("pairs")) {
      const int na = p.at("a")[0], la = p.at("a")[1], nb = p.at("b")[0], lb = p.at("b")[1];
      const double rc = p.at("r_c");
      const std::string row = state_name(na, la) + "/" + state_name(nb, lb) + " r_c=" + format_number(rc);
      out.push_back(compare_absolute("degeneracy", row, "E", cha::cha_energy(na, la, rc), cha::cha_energy(nb, lb, rc), tol));
    }
    return out;
  }

  std::vector<CellCheck> oracle() {
    const std::vector<double> radii{0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0};
    std::vector<std::pair<int, double>> jobs;
    for (double rc : radii)
      for (int l = 0; l <= 4; ++l) jobs.emplace_back(l, rc);
    auto rows = parallel_map(
        jobs,
        [](const std::pair<int, double>& j) {
          const auto [l, rc] = j;
          const auto spec = cha::collocation_eigensolve(l, rc);
          std::vector<CellCheck> cells;
          for (int n = l + 1; n <= 5; ++n)
            cells.push_back(compare_relative("oracle", state_name(n, l) + " r_c=" + format_number(rc), "E collocation",
                                             spec[static_cast<std::size_t>(n - l - 1)], cha::cha_energy(n, l, rc), 1e-8));
          return cells;
        },
        jobs_);
    std::vector<CellCheck> out;
    for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    return out;
  }

  std::vector<CellCheck> cross_validation() {
    std::vector<std::tuple<int, int, int>> qn;
    for (int n = 1; n <= 5; ++n)
      for (int l = 0; l < n; ++l)
        for (int m = -l; m <= l; ++m) qn.emplace_back(n, l, m);
    std::map<std::pair<int, int>, cha::RadialState> states;
    for (int n = 1; n <= 5; ++n)
      for (int l = 0; l < n; ++l) states.emplace(std::make_pair(n, l), cha::cha_wavefunction(n, l, cha::infinite_radius));
    std::vector<CellCheck> out;
    for (const auto& [n, l, m] : qn) {
      const auto f = info::fisher_central(states.at({n, l}), m);
      const auto c = info::fisher_fha_closed(n, l, m);
      const std::string row = state_name(n, l) + " m=" + std::to_string(m);
      out.push_back(compare_relative("cross-validation", row, "I_r", f.i_r, c.i_r, 1e-5));
      out.push_back(compare_relative("cross-validation", row, "I_p", f.i_p, c.i_p, 1e-5));
    }
    // Momentum unitarity on every state the density and virial tables use.
    std::vector<std::tuple<int, int, double>> all;
    for (const char* id : {"T2", "T3", "T7"})
      for (const auto& s : density_states(id)) all.push_back(s);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    prefetch(all);
    for (const auto& [n, l, rc] : all) {
      const double defect = bundle(n, l, rc).momentum.norm_defect;
      out.push_back({"cross-validation", state_name(n, l) + " r_c=" + rc_label(rc), "momentum norm defect", defect,
                     0.0, defect, "absolute", 1e-6, defect <= 1e-6, ""});
    }
    return out;
  }
};

inline Table checks_table(const std::vector<CellCheck>& cells) {
  Table t;
  t.columns = {"table", "row", "column", "computed", "expected", "error", "tolerance_kind", "tolerance", "pass", "note"};
  for (const auto& c : cells)
    t.rows.push_back({c.table, c.row, c.column, c.computed, c.expected, c.error, c.tolerance_kind, c.tolerance, c.pass,
                      c.note});
  return t;
}

}  // namespace qconfine::app
