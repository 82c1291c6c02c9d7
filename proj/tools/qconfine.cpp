// qconfine: command-line driver for the double-well, confined-hydrogen,
// information-measure and virial computations.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qconfine/app/commands.hpp"

using namespace qconfine;
using namespace qconfine::app;

namespace {

struct Common {
  std::string format = "csv";
  std::string output;
  bool plot_data = false;
  std::optional<int> jobs;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  sub->add_option("-o,--output", c.output, "write to this file instead of stdout");
  sub->add_flag("--plot-data", c.plot_data, "emit (x, y, series) triplets instead of the table");
  sub->add_option("-j,--jobs", c.jobs, "worker threads (default: QCONFINE_JOBS or 1)");
}

int emit(const CommandResult& res, const Common& c) {
  const Format f = c.format == "jsonl" ? Format::jsonl : Format::csv;
  const Table& t = c.plot_data ? plot_data(res.table, res.x_column, res.keys) : res.table;
  if (c.output.empty()) {
    write_table(std::cout, t, f);
  } else {
    std::ofstream out(c.output, std::ios::binary);
    if (!out) {
      std::cerr << "qconfine: cannot write " << c.output << "\n";
      return 1;
    }
    write_table(out, t, f);
  }
  if (res.failures > 0) {
    std::cerr << "qconfine: " << res.failures << " row(s) missed an accuracy check\n";
    return 2;
  }
  return 0;
}

std::vector<StateLabel> parse_states(const std::vector<std::string>& items) {
  std::vector<StateLabel> out;
  for (const auto& it : items)
    for (const auto& s : split(it, ','))
      if (!s.empty()) out.push_back(parse_state(s));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confined quantum systems and their information-theoretic measures"};
  app.require_subcommand(0, 1);
  app.set_config("--config", "", "JSON or TOML run description");
  app.config_formatter(std::make_shared<RunConfigReader>());

  // dw
  Common dw_common;
  DwOptions dw_opt;
  std::string beta_sweep, gamma_sweep, dw_states = "0..3";
  std::vector<std::string> dw_b;
  double dw_beta = 10.0, dw_gamma = 0.0;
  auto* dw_cmd = app.add_subcommand("dw", "double-well states and their measures");
  dw_cmd->add_option("--alpha", dw_opt.alpha, "quartic coefficient")->default_val(1.0);
  dw_cmd->add_option("--beta", dw_beta, "quadratic coefficient")->default_val(10.0);
  dw_cmd->add_option("--gamma", dw_gamma, "linear asymmetry")->default_val(0.0);
  dw_cmd->add_option("--beta-sweep", beta_sweep, "lo:hi:step");
  dw_cmd->add_option("--gamma-sweep", gamma_sweep, "lo:hi:step");
  dw_cmd->add_option("--states", dw_states, "e.g. 0..3 or 0,2");
  dw_cmd->add_option("--basis", dw_opt.n_basis, "oscillator basis size")->default_val(100);
  dw_cmd->add_option("--b", dw_b, "complexity exponents");
  dw_cmd->add_flag("--transitions", dw_opt.transitions, "list localization transitions along --gamma-sweep");
  dw_cmd->configurable();
  add_common(dw_cmd, dw_common);

  // cha
  Common cha_common;
  ChaOptions cha_opt;
  std::vector<std::string> cha_states{"1s"}, cha_rc, cha_measures, cha_lambda, cha_b;
  bool cha_free = false;
  auto* cha_cmd = app.add_subcommand("cha", "confined or free hydrogen-like states");
  cha_cmd->add_option("--state", cha_states, "orbital labels such as 1s,2p")->delimiter(',');
  cha_cmd->add_option("--m", cha_opt.m, "magnetic quantum number")->default_val(0);
  cha_cmd->add_option("--rc", cha_rc, "confinement radii (inf for the free atom)")->delimiter(',');
  cha_cmd->add_option("--z", cha_opt.z, "nuclear charge")->default_val(1.0);
  cha_cmd->add_flag("--free", cha_free, "add the free atom (r_c = inf)");
  cha_cmd->add_option("--measure", cha_measures, "fisher,shannon,renyi,onicescu,complexity,bounds,virial,all")
      ->delimiter(',');
  cha_cmd->add_option("--lambda", cha_lambda, "Renyi orders")->delimiter(',');
  cha_cmd->add_option("--b", cha_b, "complexity exponents")->delimiter(',');
  cha_cmd->add_option("--alpha", cha_opt.alpha, "position order of the Renyi pair")->default_val(0.6);
  cha_cmd->add_option("--beta", cha_opt.beta, "momentum order of the Renyi pair")->default_val(3.0);
  cha_cmd->add_flag("--closed-forms", cha_opt.closed_forms, "free-atom closed forms next to the numbers");
  cha_cmd->configurable();
  add_common(cha_cmd, cha_common);

  // info
  Common info_common;
  InfoOptions info_opt;
  std::string info_kind = "line-1d";
  std::vector<std::string> info_lambda;
  auto* info_cmd = app.add_subcommand("info", "measures of a tabulated density");
  info_cmd->add_option("--density", info_opt.density_path, "two-column file x,rho ('-' for stdin)")->required();
  info_cmd->add_option("--kind", info_kind, "line-1d, radial-r, radial-p or angular-theta")
      ->check(CLI::IsMember({"line-1d", "radial-r", "radial-p", "angular-theta"}));
  info_cmd->add_option("--lambda", info_lambda, "Renyi orders")->delimiter(',');
  info_cmd->configurable();
  add_common(info_cmd, info_common);

  // virial
  Common vir_common;
  VirialOptions vir_opt;
  std::vector<std::string> vir_states{"1s"}, vir_rc;
  auto* vir_cmd = app.add_subcommand("virial", "kinetic and potential energy variances");
  vir_cmd->add_option("--state", vir_states, "orbital labels")->delimiter(',');
  vir_cmd->add_option("--rc", vir_rc, "confinement radii (inf for the free atom)")->delimiter(',');
  vir_cmd->add_option("--z", vir_opt.z, "nuclear charge")->default_val(1.0);
  vir_cmd->configurable();
  add_common(vir_cmd, vir_common);

  // reproduce
  Common rep_common;
  std::vector<std::string> rep_ids;
  std::string rep_data = default_reference_path;
  auto* rep_cmd = app.add_subcommand("reproduce", "recompute reference tables and compare cell by cell");
  rep_cmd->add_option("table", rep_ids, "T1..T7, sdw-constants, degeneracy, oracle, cross-validation, all")
      ->required();
  rep_cmd->add_option("--data", rep_data, "reference value file");
  rep_cmd->configurable();
  add_common(rep_cmd, rep_common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (dw_cmd->parsed()) {
      dw_opt.betas = beta_sweep.empty() ? std::vector<double>{dw_beta} : parse_sweep(beta_sweep);
      dw_opt.gammas = gamma_sweep.empty() ? std::vector<double>{dw_gamma} : parse_sweep(gamma_sweep);
      dw_opt.states = parse_indices(dw_states);
      if (!dw_b.empty()) dw_opt.b_values = parse_reals(dw_b);
      return emit(cmd_dw(dw_opt, resolve_jobs(dw_common.jobs)), dw_common);
    }
    if (cha_cmd->parsed()) {
      cha_opt.states = parse_states(cha_states);
      cha_opt.radii = parse_reals(cha_rc);
      if (cha_free || cha_opt.radii.empty()) cha_opt.radii.push_back(cha::infinite_radius);
      if (!cha_measures.empty()) cha_opt.measures = parse_measures(cha_measures);
      if (!cha_lambda.empty()) cha_opt.lambdas = parse_reals(cha_lambda);
      if (!cha_b.empty()) cha_opt.b_values = parse_reals(cha_b);
      return emit(cmd_cha(cha_opt, resolve_jobs(cha_common.jobs)), cha_common);
    }
    if (info_cmd->parsed()) {
      info_opt.kind = *info::parse_density_kind(info_kind);
      if (!info_lambda.empty()) info_opt.lambdas = parse_reals(info_lambda);
      if (info_opt.density_path == "-") return emit(cmd_info(info_opt, std::cin), info_common);
      std::ifstream in(info_opt.density_path);
      if (!in) {
        std::cerr << "qconfine: cannot read " << info_opt.density_path << "\n";
        return 1;
      }
      return emit(cmd_info(info_opt, in), info_common);
    }
    if (vir_cmd->parsed()) {
      vir_opt.states = parse_states(vir_states);
      vir_opt.radii = vir_rc.empty() ? std::vector<double>{cha::infinite_radius} : parse_reals(vir_rc);
      return emit(cmd_virial(vir_opt, resolve_jobs(vir_common.jobs)), vir_common);
    }
    if (rep_cmd->parsed()) return emit(cmd_reproduce(rep_ids, rep_data, resolve_jobs(rep_common.jobs)), rep_common);
  } catch (const Error& e) {
    std::cerr << "qconfine: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "qconfine: " << e.what() << "\n";
    return 1;
  }
  std::cout << app.help();
  return 0;
}
