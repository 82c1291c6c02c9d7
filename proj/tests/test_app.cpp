#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qconfine/app/commands.hpp"

using namespace qconfine;
using namespace qconfine::app;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

std::string csv_of(const Table& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

double number_at(const Table& t, std::size_t row, const std::string& col) {
  const auto i = t.column(col);
  REQUIRE(i < t.columns.size());
  return std::get<double>(t.rows.at(row).at(i));
}

}  // namespace

TEST_CASE("number formatting", "[app][table]") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(-2.5e-12) == "-2.5e-12");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("CSV and JSON lines", "[app][table]") {
  Table t;
  t.columns = {"name", "value", "flag", "note"};
  t.rows.push_back({std::string("a,b"), 1.5, true, Cell{}});
  t.rows.push_back({std::string("say \"hi\""), std::numeric_limits<double>::infinity(), false, 7LL});
  CHECK(csv_of(t) == "name,value,flag,note\n\"a,b\",1.5,true,\n\"say \"\"hi\"\"\",inf,false,7\n");
  std::ostringstream js;
  write_jsonl(js, t);
  std::istringstream lines(js.str());
  std::string line;
  std::getline(lines, line);
  const auto first = nlohmann::json::parse(line);
  CHECK(first.at("name") == "a,b");
  CHECK(first.at("value") == 1.5);
  CHECK(first.at("note").is_null());
  std::getline(lines, line);
  const auto second = nlohmann::json::parse(line);
  CHECK(second.at("value").is_null());
  CHECK(second.at("note") == 7);
}

TEST_CASE("plot triplets", "[app][table]") {
  Table t;
  t.columns = {"state", "r_c", "S", "ok"};
  t.rows.push_back({std::string("1s"), 0.5, 2.0, true});
  t.rows.push_back({std::string("1s"), 1.0, 3.0, true});
  const auto p = plot_data(t, "r_c", {"state"});
  REQUIRE(p.rows.size() == 2);
  CHECK(std::get<double>(p.rows[1][0]) == 1.0);
  CHECK(std::get<double>(p.rows[1][1]) == 3.0);
  CHECK(std::get<std::string>(p.rows[1][2]) == "state=1s;S");
}

TEST_CASE("argument parsing helpers", "[app][config]") {
  CHECK(std::isinf(parse_real("inf")));
  CHECK(std::isinf(parse_real(" Free ")));
  CHECK(parse_real("2.5e-1") == 0.25);
  CHECK_THROWS_AS(parse_real("2.5x"), Error);
  CHECK_THROWS_AS(parse_real(""), Error);
  CHECK(parse_reals({"0.1,0.5", "inf"}).size() == 3);
  const auto sweep = parse_sweep("0:1:0.25");
  REQUIRE(sweep.size() == 5);
  CHECK_THAT(sweep.back(), WithinAbs(1.0, 1e-15));
  CHECK_THROWS_AS(parse_sweep("1:0:0.1"), Error);
  CHECK_THROWS_AS(parse_sweep("0:1"), Error);
  CHECK(parse_indices("0..3") == std::vector<int>{0, 1, 2, 3});
  CHECK(parse_indices("0,2,5") == std::vector<int>{0, 2, 5});
  CHECK_THROWS_AS(parse_indices("1.5"), Error);
}

TEST_CASE("orbital labels", "[app][config]") {
  const auto s = parse_state("4f");
  CHECK(s.n == 4);
  CHECK(s.l == 3);
  CHECK(state_name(2, 1) == "2p");
  CHECK(parse_state("10S").l == 0);
  CHECK_THROWS_AS(parse_state("1p"), Error);
  CHECK_THROWS_AS(parse_state("2"), Error);
  CHECK_THROWS_AS(parse_state("2b"), Error);
  CHECK_THROWS_AS(parse_state("p2"), Error);
}

TEST_CASE("worker count", "[app][jobs]") {
  CHECK(resolve_jobs(3) == 3);
  CHECK_THROWS_AS(resolve_jobs(0), Error);
  ::setenv("QCONFINE_JOBS", "4", 1);
  CHECK(resolve_jobs(std::nullopt) == 4);
  CHECK(resolve_jobs(2) == 2);
  ::setenv("QCONFINE_JOBS", "many", 1);
  CHECK_THROWS_AS(resolve_jobs(std::nullopt), Error);
  ::unsetenv("QCONFINE_JOBS");
  CHECK(resolve_jobs(std::nullopt) == 1);
}

TEST_CASE("parallel map keeps order and reports the first failure", "[app][jobs]") {
  std::vector<int> items(200);
  for (int i = 0; i < 200; ++i) items[i] = i;
  for (int jobs : {1, 4}) {
    const auto sq = parallel_map(items, [](int v) { return v * v; }, jobs);
    for (int i = 0; i < 200; ++i) CHECK(sq[i] == i * i);
    try {
      parallel_map(
          items,
          [](int v) {
            if (v == 17 || v == 150) throw std::runtime_error("item " + std::to_string(v));
            return v;
          },
          jobs);
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "item 17");
    }
  }
}

TEST_CASE("run descriptions in JSON and TOML", "[app][config]") {
  for (const auto& [name, text] :
       {std::pair<std::string, std::string>{"qconfine_run.json",
                                            R"({"cha": {"state": ["2s", "3d"], "rc": [0.5, "inf"], "z": 2}})"},
        {"qconfine_run.toml", "[cha]\nstate = [\"2s\", \"3d\"]\nrc = [0.5, \"inf\"]\nz = 2\n"}}) {
    CLI::App app;
    app.set_config("--config");
    app.config_formatter(std::make_shared<RunConfigReader>());
    std::vector<std::string> states, rc;
    double z = 1.0;
    auto* sub = app.add_subcommand("cha");
    sub->add_option("--state", states);
    sub->add_option("--rc", rc);
    sub->add_option("--z", z);
    sub->configurable();
    const auto path = write_temp(name, text);
    const std::string arg = path.string();
    const char* argv[] = {"qconfine", "--config", arg.c_str()};
    app.parse(3, const_cast<char**>(argv));
    CHECK(sub->parsed());
    CHECK(states == std::vector<std::string>{"2s", "3d"});
    REQUIRE(rc.size() == 2);
    CHECK(parse_real(rc[0]) == 0.5);
    CHECK(std::isinf(parse_real(rc[1])));
    CHECK(z == 2.0);
  }
  CLI::App app;
  app.set_config("--config");
  app.config_formatter(std::make_shared<RunConfigReader>());
  const auto bad = write_temp("qconfine_bad.json", "{\"cha\": [");
  const std::string arg = bad.string();
  const char* argv[] = {"qconfine", "--config", arg.c_str()};
  CHECK_THROWS(app.parse(3, const_cast<char**>(argv)));
}

TEST_CASE("cha command", "[app][commands]") {
  ChaOptions o;
  o.states = {{1, 0}, {2, 1}};
  o.radii = {0.5, cha::infinite_radius};
  o.measures = {Measure::fisher, Measure::virial};
  o.closed_forms = true;
  const auto res = cmd_cha(o, 1);
  REQUIRE(res.table.rows.size() == 4);
  CHECK(res.failures == 0);
  CHECK_THAT(number_at(res.table, 0, "var_V"), WithinRel(14.53962018, 1e-6));
  CHECK_THAT(number_at(res.table, 1, "I_r"), WithinRel(4.0, 1e-9));
  CHECK_THAT(number_at(res.table, 1, "I_r_closed"), WithinRel(4.0, 1e-15));
  CHECK(res.table.column("S_r") == res.table.columns.size());

  const auto serial = csv_of(cmd_cha(o, 1).table), threaded = csv_of(cmd_cha(o, 3).table);
  CHECK(serial == csv_of(res.table));
  CHECK(serial == threaded);

  o.m = 2;
  CHECK_THROWS_AS(cmd_cha(o, 1), Error);
  CHECK(parse_measures({"all"}).size() == 7);
  CHECK_THROWS_AS(parse_measures({"entropy"}), Error);
}

TEST_CASE("virial command", "[app][commands]") {
  VirialOptions o;
  o.states = {{2, 1}};
  o.radii = {0.1, cha::infinite_radius};
  const auto res = cmd_virial(o, 2);
  REQUIRE(res.table.rows.size() == 2);
  CHECK_THAT(number_at(res.table, 0, "var_T"), WithinRel(47.98046148, 1e-6));
  CHECK_THAT(number_at(res.table, 1, "var_T"), WithinRel(1.0 / 48.0, 1e-9));
  CHECK(res.failures == 0);
}

TEST_CASE("info command on a tabulated Gaussian", "[app][commands]") {
  std::ostringstream text;
  text << "# standard normal\nx,rho\n";
  for (int i = 0; i <= 2400; ++i) {
    const double x = -12.0 + i * 0.01;
    char line[64];
    std::snprintf(line, sizeof line, "%.17g\t%.17g\n", x, std::exp(-x * x / 2.0) / std::sqrt(2.0 * std::numbers::pi));
    text << line;
  }
  std::istringstream in(text.str());
  InfoOptions o;
  const auto res = cmd_info(o, in);
  CHECK(res.failures == 0);
  CHECK_THAT(number_at(res.table, 0, "S"), WithinAbs(0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e), 1e-8));
  CHECK_THAT(number_at(res.table, 0, "I"), WithinRel(1.0, 1e-4));
  std::istringstream broken("x,rho\n0,1\nfoo,bar\n");
  CHECK_THROWS_AS(cmd_info(o, broken), Error);
}

TEST_CASE("reproduce reports failing cells", "[app][reproduce]") {
  const auto good = cmd_reproduce({"T6"}, default_reference_path, 1);
  CHECK(good.failures == 0);
  CHECK(!good.table.rows.empty());

  auto data = load_reference(default_reference_path);
  auto& row = data["tables"]["T6"]["rows"][0];
  row["IR_r"]["num"] = row["IR_r"]["num"].get<long long>() + 1;
  const auto path = write_temp("qconfine_reference.json", data.dump());
  const auto bad = cmd_reproduce({"T6"}, path.string(), 1);
  CHECK(bad.failures >= 1);
  CHECK(bad.table.rows.size() == good.table.rows.size());
  CHECK_THROWS_AS(cmd_reproduce({"T9"}, default_reference_path, 1), Error);
}
