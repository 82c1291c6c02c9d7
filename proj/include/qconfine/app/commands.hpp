#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qconfine/app/reproduce.hpp"

namespace qconfine::app {

/// Output of one subcommand. `failures` counts rows or cells that missed an
/// accuracy sentinel; the process exits non-zero when it is positive.
struct CommandResult {
  Table table;
  int failures = 0;
  std::string x_column;           ///< abscissa for --plot-data
  std::vector<std::string> keys;  ///< columns naming a plot series
};

inline std::string join_warnings(const std::vector<std::string>& w) {
  std::string out;
  for (const auto& s : w) out += (out.empty() ? "" : "; ") + s;
  return out;
}

// dw ------------------------------------------------------------------------

struct DwOptions {
  double alpha = 1.0;
  std::vector<double> betas{10.0};
  std::vector<double> gammas{0.0};
  std::vector<int> states{0, 1, 2, 3};
  int n_basis = 100;
  std::vector<double> b_values{1.0, 2.0 / 3.0};
  bool transitions = false;  ///< list localization transitions along the gamma sweep
};

inline void validate(const DwOptions& o) {
  require(o.alpha > 0.0 && std::isfinite(o.alpha), ErrorCode::invalid_argument, "alpha must be positive");
  require(o.n_basis >= 4 && o.n_basis <= 2000, ErrorCode::invalid_argument, "basis size must be in [4, 2000]");
  require(!o.states.empty() && !o.betas.empty() && !o.gammas.empty(), ErrorCode::invalid_argument, "empty sweep");
  for (int s : o.states)
    require(s >= 0 && s < o.n_basis, ErrorCode::invalid_argument, "state index beyond the basis");
  for (double v : o.betas) require(std::isfinite(v), ErrorCode::invalid_argument, "beta must be finite");
  for (double v : o.gammas) require(std::isfinite(v), ErrorCode::invalid_argument, "gamma must be finite");
}

inline CommandResult cmd_dw_transitions(const DwOptions& o, int jobs) {
  CommandResult res;
  res.table.columns = {"alpha", "beta", "state", "index", "gamma", "spacing"};
  require(o.gammas.size() >= 2, ErrorCode::invalid_argument, "--transitions needs a gamma sweep");
  const double step = o.gammas[1] - o.gammas[0];
  std::vector<std::pair<double, int>> work;
  for (double beta : o.betas)
    for (int s : o.states) work.emplace_back(beta, s);
  const auto sweeps = parallel_map(
      work,
      [&](const std::pair<double, int>& w) {
        return dw::detect_transitions(o.alpha, w.first, o.gammas.front(), o.gammas.back(), step, w.second, o.n_basis);
      },
      jobs);
  for (std::size_t i = 0; i < work.size(); ++i)
    for (std::size_t k = 0; k < sweeps[i].gammas.size(); ++k)
      res.table.rows.push_back({o.alpha, work[i].first, static_cast<long long>(work[i].second),
                                static_cast<long long>(k), sweeps[i].gammas[k], sweeps[i].spacing});
  return res;
}

inline CommandResult cmd_dw(const DwOptions& o, int jobs) {
  validate(o);
  if (o.transitions) return cmd_dw_transitions(o, jobs);
  CommandResult res;
  auto& cols = res.table.columns;
  cols = {"alpha", "beta", "gamma", "state", "E", "S_x", "S_p", "S_net", "E_x", "E_p", "E_net", "I_x", "I_p"};
  for (double b : o.b_values) cols.push_back("OS_b=" + format_number(b));
  for (const char* c : {"well", "frac_I", "nodes", "warnings"}) cols.push_back(c);
  res.x_column = o.betas.size() > 1 || o.gammas.size() == 1 ? "beta" : "gamma";
  res.keys = {"state"};

  std::vector<std::pair<double, double>> points;
  for (double beta : o.betas)
    for (double gamma : o.gammas) points.emplace_back(beta, gamma);
  const auto blocks = parallel_map(
      points,
      [&](const std::pair<double, double>& pt) {
        std::vector<std::vector<Cell>> rows;
        int fails = 0;
        const auto spec = dw::make_potential(o.alpha, pt.first, pt.second);
        dw::BasisSolution sol;
        std::string solve_error;
        try {
          sol = dw::solve(spec, o.n_basis);
        } catch (const std::exception& e) {
          solve_error = e.what();
        }
        for (int s : o.states) {
          std::vector<Cell> row{o.alpha, pt.first, pt.second, static_cast<long long>(s)};
          if (!solve_error.empty()) {
            row.resize(cols.size());
            row.back() = solve_error;
            rows.push_back(row);
            ++fails;
            continue;
          }
          try {
            info::ReportOptions ro;
            ro.lambdas.clear();
            ro.b_values = o.b_values;
            const auto rep = info::info_report(sol, s, ro);
            row.insert(row.end(), {sol.energies(s), *rep.s_net_r, *rep.s_net_p, *rep.s_total, *rep.e_net_r,
                                   *rep.e_net_p, *rep.e_total, *rep.i_r, *rep.i_p});
            for (double b : o.b_values)
              row.push_back(info::complexity(info::Order::E, info::Disorder::shannon(), b, rep, info::Space::total));
            auto warnings = rep.warnings;
            try {
              const auto occ = dw::well_occupancy(sol, s, spec);
              row.push_back(std::string(dw::to_string(occ.label)));
              row.push_back(occ.frac_I);
            } catch (const Error& e) {
              if (e.code() != ErrorCode::not_double_well) throw;
              row.push_back(std::string("single"));
              row.push_back(Cell{});
            }
            row.push_back(static_cast<long long>(dw::count_effective_nodes(sol, s)));
            row.push_back(join_warnings(warnings));
            if (!warnings.empty()) ++fails;
          } catch (const std::exception& e) {
            row.resize(cols.size());
            row.back() = std::string(e.what());
            ++fails;
          }
          rows.push_back(std::move(row));
        }
        return std::make_pair(rows, fails);
      },
      jobs);
  for (const auto& [rows, fails] : blocks) {
    res.table.rows.insert(res.table.rows.end(), rows.begin(), rows.end());
    res.failures += fails;
  }
  return res;
}

// cha -----------------------------------------------------------------------

enum class Measure { fisher, shannon, renyi, onicescu, complexity, bounds, virial };

inline const std::vector<std::pair<const char*, Measure>>& measure_names() {
  static const std::vector<std::pair<const char*, Measure>> names{
      {"fisher", Measure::fisher},   {"shannon", Measure::shannon},       {"renyi", Measure::renyi},
      {"onicescu", Measure::onicescu}, {"complexity", Measure::complexity}, {"bounds", Measure::bounds},
      {"virial", Measure::virial}};
  return names;
}

inline std::set<Measure> parse_measures(const std::vector<std::string>& items) {
  std::set<Measure> out;
  for (const auto& it : items)
    for (const auto& part : split(it, ',')) {
      if (part.empty()) continue;
      if (part == "all") {
        for (const auto& [name, m] : measure_names()) out.insert(m);
        continue;
      }
      bool found = false;
      for (const auto& [name, m] : measure_names())
        if (part == name) {
          out.insert(m);
          found = true;
        }
      require(found, ErrorCode::invalid_argument, "unknown measure '" + part + "'");
    }
  return out;
}

struct ChaOptions {
  std::vector<StateLabel> states{{1, 0}};
  int m = 0;
  std::vector<double> radii{cha::infinite_radius};
  double z = 1.0;
  std::set<Measure> measures{Measure::fisher, Measure::shannon, Measure::renyi, Measure::onicescu,
                             Measure::complexity, Measure::bounds, Measure::virial};
  std::vector<double> lambdas{0.6, 3.0};
  std::vector<double> b_values{1.0, 2.0 / 3.0};
  double alpha = 0.6, beta = 3.0;
  bool closed_forms = false;
};

inline void validate(const ChaOptions& o) {
  require(!o.states.empty() && !o.radii.empty(), ErrorCode::invalid_argument, "no states or radii requested");
  require(o.z > 0.0 && std::isfinite(o.z), ErrorCode::invalid_argument, "Z must be positive");
  for (const auto& s : o.states) {
    require(s.n > s.l && s.l >= 0, ErrorCode::invalid_argument, "states need n > l");
    require(std::abs(o.m) <= s.l, ErrorCode::invalid_argument,
            "|m| = " + std::to_string(std::abs(o.m)) + " exceeds l of " + state_name(s.n, s.l));
  }
  for (double r : o.radii) require(r > 0.0, ErrorCode::invalid_argument, "r_c must be positive");
  for (double lam : o.lambdas)
    require(lam > 0.0 && lam != 1.0, ErrorCode::invalid_argument, "Renyi orders must be positive and not 1");
}

inline CommandResult cmd_cha(const ChaOptions& o, int jobs) {
  validate(o);
  const auto has = [&](Measure m) { return o.measures.count(m) > 0; };
  const bool need_momentum = has(Measure::shannon) || has(Measure::renyi) || has(Measure::onicescu) ||
                             has(Measure::complexity) || has(Measure::bounds);
  CommandResult res;
  res.x_column = "r_c";
  res.keys = {"state", "m"};
  auto& cols = res.table.columns;
  cols = {"state", "n", "l", "m", "r_c", "Z", "E"};
  if (has(Measure::fisher)) cols.insert(cols.end(), {"I_r", "I_p"});
  if (has(Measure::shannon)) cols.insert(cols.end(), {"S_r", "S_p", "S_theta", "S_net_r", "S_net_p", "S_total"});
  if (has(Measure::renyi))
    for (double lam : o.lambdas) {
      const std::string s = "(" + format_number(lam) + ")";
      cols.insert(cols.end(), {"R_r" + s, "R_p" + s, "R_sum" + s, "T_r" + s, "T_p" + s});
    }
  if (has(Measure::onicescu)) cols.insert(cols.end(), {"E_r", "E_p", "E_theta", "E_net_r", "E_net_p", "E_total"});
  if (has(Measure::complexity))
    for (double b : o.b_values)
      for (const char* c : {"C_ES", "C_IS"}) cols.push_back(std::string(c) + "_b=" + format_number(b));
  if (has(Measure::bounds))
    cols.insert(cols.end(), {"bbm_bound", "bbm_slack", "bbm_ok", "renyi_lhs", "renyi_bound", "renyi_ok"});
  if (has(Measure::virial))
    cols.insert(cols.end(), {"var_T", "var_V", "cross_TV", "cross_VT", "virial_mismatch"});
  if (o.closed_forms) cols.insert(cols.end(), {"I_r_closed", "I_p_closed", "IR_r", "IR_r_closed", "IR_p_closed"});
  cols.push_back("momentum_norm_defect");
  cols.push_back("warnings");

  std::vector<std::pair<StateLabel, double>> work;
  for (const auto& s : o.states)
    for (double rc : o.radii) work.emplace_back(s, rc);

  const auto rows = parallel_map(
      work,
      [&](const std::pair<StateLabel, double>& w) {
        const auto [q, rc] = w;
        std::vector<Cell> row{state_name(q.n, q.l), static_cast<long long>(q.n), static_cast<long long>(q.l),
                              static_cast<long long>(o.m), rc, o.z};
        std::vector<std::string> warnings;
        bool failed = false;
        try {
          const auto st = cha::cha_wavefunction(q.n, q.l, rc, o.z, {}, o.m);
          row.push_back(st.energy);
          info::InfoReport rep;
          Cell defect;
          if (need_momentum) {
            const auto ms = cha::momentum_transform(st);
            defect = ms.norm_defect;
            info::ReportOptions ro;
            ro.lambdas = o.lambdas;
            for (double lam : {o.alpha, o.beta})
              if (std::find(ro.lambdas.begin(), ro.lambdas.end(), lam) == ro.lambdas.end()) ro.lambdas.push_back(lam);
            ro.b_values = o.b_values;
            ro.alpha = o.alpha;
            ro.beta = o.beta;
            rep = info::info_report(st, ms, ro);
            warnings = rep.warnings;
          } else {
            const auto f = info::fisher_central(st, o.m);
            rep.i_r = f.i_r;
            rep.i_p = f.i_p;
          }
          if (has(Measure::fisher)) row.insert(row.end(), {*rep.i_r, *rep.i_p});
          if (has(Measure::shannon))
            row.insert(row.end(), {*rep.s_r, *rep.s_p, *rep.s_theta, *rep.s_net_r, *rep.s_net_p, *rep.s_total});
          if (has(Measure::renyi))
            for (double lam : o.lambdas) {
              const auto& e = rep.renyi.at(lam);
              row.insert(row.end(), {e.r, e.p, e.sum, e.tsallis_r, e.tsallis_p});
            }
          if (has(Measure::onicescu))
            row.insert(row.end(), {*rep.e_r, *rep.e_p, *rep.e_theta, *rep.e_net_r, *rep.e_net_p, *rep.e_total});
          if (has(Measure::complexity))
            for (double b : o.b_values) {
              row.push_back(info::complexity(info::Order::E, info::Disorder::shannon(), b, rep, info::Space::total));
              row.push_back(info::complexity(info::Order::I, info::Disorder::shannon(), b, rep, info::Space::total));
            }
          if (has(Measure::bounds)) {
            const auto& v = *rep.bounds;
            row.insert(row.end(), {v.bbm_bound, v.bbm_slack, v.bbm_ok, v.renyi_lhs, v.renyi_bound, v.renyi_ok});
            if (!v.bbm_ok) warnings.push_back("BBM bound violated");
          }
          if (has(Measure::virial)) {
            try {
              const auto v = virial::virial_report(st);
              row.insert(row.end(), {v.var_T, v.var_V, v.cross_TV, v.cross_VT, v.max_mismatch});
              if (v.max_mismatch > 1e-6 * std::max(1.0, v.var_V)) warnings.push_back("virial chain mismatch");
            } catch (const Error& e) {
              row.insert(row.end(), 5, Cell{});
              warnings.push_back(e.what());
            }
          }
          if (o.closed_forms) {
            if (std::isinf(rc)) {
              const auto f = info::fisher_fha_closed(q.n, q.l, o.m, o.z);
              row.insert(row.end(), {f.i_r, f.i_p});
              if (q.n - q.l >= 2) {
                const auto c = info::relative_fisher_closed(q.n, q.l, o.z);
                row.push_back(info::relative_fisher_numeric(st, info::circular_reference(q.n, q.l, o.z)).ir_r);
                row.push_back(std::to_string(c.ir_r_rational.num) + "/" + std::to_string(c.ir_r_rational.den));
                row.push_back(c.ir_p);
              } else {
                row.insert(row.end(), 3, Cell{});
              }
            } else {
              row.insert(row.end(), 5, Cell{});
            }
          }
          row.push_back(defect);
        } catch (const std::exception& e) {
          warnings.push_back(e.what());
          failed = true;
        }
        row.resize(cols.size() - 1);
        row.push_back(join_warnings(warnings));
        return std::make_pair(row, failed || !warnings.empty());
      },
      jobs);
  for (const auto& [row, fail] : rows) {
    res.table.rows.push_back(row);
    res.failures += fail ? 1 : 0;
  }
  return res;
}

// virial --------------------------------------------------------------------

struct VirialOptions {
  std::vector<StateLabel> states{{1, 0}};
  std::vector<double> radii{cha::infinite_radius};
  double z = 1.0;
};

inline CommandResult cmd_virial(const VirialOptions& o, int jobs) {
  require(o.z > 0.0 && std::isfinite(o.z), ErrorCode::invalid_argument, "Z must be positive");
  for (double r : o.radii) require(r > 0.0, ErrorCode::invalid_argument, "r_c must be positive");
  CommandResult res;
  res.x_column = "r_c";
  res.keys = {"state"};
  res.table.columns = {"state", "n", "l", "r_c", "Z", "E", "mean_T", "mean_V", "var_T", "var_V", "cross_TV",
                       "cross_VT", "var_T_operator", "max_mismatch", "ok", "warnings"};
  std::vector<std::pair<StateLabel, double>> work;
  for (const auto& s : o.states)
    for (double rc : o.radii) work.emplace_back(s, rc);
  const auto rows = parallel_map(
      work,
      [&](const std::pair<StateLabel, double>& w) {
        const auto [q, rc] = w;
        std::vector<Cell> row{state_name(q.n, q.l), static_cast<long long>(q.n), static_cast<long long>(q.l), rc, o.z};
        try {
          const auto v = virial::virial_report(cha::cha_wavefunction(q.n, q.l, rc, o.z));
          const bool ok = v.max_mismatch <= 1e-6 * std::max(1.0, v.var_V);
          row.insert(row.end(), {v.energy, v.mean_T, v.mean_V, v.var_T, v.var_V, v.cross_TV, v.cross_VT,
                                 v.var_T_operator, v.max_mismatch, ok, std::string(ok ? "" : "virial chain mismatch")});
          return std::make_pair(row, !ok);
        } catch (const std::exception& e) {
          row.resize(15);
          row.push_back(std::string(e.what()));
          return std::make_pair(row, true);
        }
      },
      jobs);
  for (const auto& [row, fail] : rows) {
    res.table.rows.push_back(row);
    res.failures += fail ? 1 : 0;
  }
  return res;
}

// info ----------------------------------------------------------------------

struct InfoOptions {
  std::string density_path;  ///< two columns: abscissa, density
  info::DensityKind kind = info::DensityKind::line_1d;
  std::vector<double> lambdas{0.6, 3.0};
};

/// Reads "x,rho" pairs; blank lines, '#' comments and a non-numeric header are skipped.
inline std::pair<std::vector<double>, std::vector<double>> read_density(std::istream& in) {
  std::vector<double> x, v;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    for (char& c : line)
      if (c == '\t' || c == ';') c = ',';
    const auto parts = split(line, ',');
    require(parts.size() >= 2, ErrorCode::invalid_argument, "density rows need two columns: " + line);
    try {
      const double a = parse_real(parts[0]), b = parse_real(parts[1]);
      x.push_back(a);
      v.push_back(b);
    } catch (const Error&) {
      require(first, ErrorCode::invalid_argument, "non-numeric density row: " + line);
    }
    first = false;
  }
  return {x, v};
}

inline CommandResult cmd_info(const InfoOptions& o, std::istream& in) {
  for (double lam : o.lambdas)
    require(lam > 0.0 && lam != 1.0, ErrorCode::invalid_argument, "Renyi orders must be positive and not 1");
  auto [x, v] = read_density(in);
  const auto d = info::tabulated_profile(o.kind, std::move(x), std::move(v));
  CommandResult res;
  res.table.columns = {"kind", "points", "normalization_defect", "S", "E"};
  std::vector<Cell> row{std::string(info::to_string(o.kind)), static_cast<long long>(d.size()), d.normalization_defect,
                        info::shannon(d), info::onicescu(d)};
  for (double lam : o.lambdas) {
    const std::string s = "(" + format_number(lam) + ")";
    res.table.columns.push_back("R" + s);
    res.table.columns.push_back("T" + s);
    row.push_back(info::renyi(d, lam));
    row.push_back(info::tsallis(d, lam));
  }
  res.table.columns.push_back("I");
  res.table.columns.push_back("warnings");
  std::vector<std::string> warnings;
  try {
    row.push_back(info::fisher_1d(d));
  } catch (const Error& e) {
    row.push_back(Cell{});
    warnings.push_back(e.what());
  }
  if (d.normalization_defect > 1e-8) warnings.push_back("density not normalized");
  row.push_back(join_warnings(warnings));
  res.failures = warnings.empty() ? 0 : 1;
  res.table.rows.push_back(row);
  return res;
}

// reproduce -----------------------------------------------------------------

inline CommandResult cmd_reproduce(const std::vector<std::string>& ids, const std::string& data_path, int jobs) {
  Reproducer rep(load_reference(data_path), jobs);
  std::vector<std::string> run = ids;
  if (run.size() == 1 && run[0] == "all") run = reproduce_ids();
  for (const auto& id : run) {
    const auto& known = reproduce_ids();
    require(std::find(known.begin(), known.end(), id) != known.end(), ErrorCode::invalid_argument,
            "unknown table id '" + id + "'");
  }
  std::vector<CellCheck> cells;
  for (const auto& id : run) {
    const auto c = rep.run(id);
    cells.insert(cells.end(), c.begin(), c.end());
  }
  CommandResult res;
  res.table = checks_table(cells);
  for (const auto& c : cells) res.failures += c.pass ? 0 : 1;
  return res;
}

}  // namespace qconfine::app
