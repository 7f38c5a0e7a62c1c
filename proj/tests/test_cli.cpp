#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"
#include "gdt/plan_type1.hpp"

namespace fs = std::filesystem;
using fixtures::rel_err;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gdt::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> led(std::vector<std::string> extra) {
  std::vector<std::string> args{"--alpha", "0.065", "--gamma", "-0.77", "--eta", "0.5", "--p",
                                "0.1",     "--c-it", "0.03", "--c-mea", "1.9e-3", "--c-op",
                                "2.7e-3",  "--dt",   "5"};
  extra.insert(extra.end(), args.begin(), args.end());
  return extra;
}

std::map<std::string, std::string> report(const std::string& text) {
  std::map<std::string, std::string> fields;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    const auto colon = line.find(": ");
    if (colon != std::string::npos) fields[line.substr(0, colon)] = line.substr(colon + 2);
  }
  return fields;
}

double number(const std::map<std::string, std::string>& fields, const std::string& key) {
  REQUIRE(fields.count(key) == 1);
  return std::stod(fields.at(key));
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("gdt_cli_test_" + std::to_string(std::random_device{}()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

void write(const std::string& path, const std::string& content) { std::ofstream(path) << content; }

}  // namespace

TEST_CASE("plan reports the optimum") {
  const auto r = run(led({"plan", "--criterion", "V", "--family", "type2"}));
  REQUIRE(r.code == 0);
  const auto f = report(r.out);
  CHECK(std::abs(number(f, "units") - 10.6) < 0.05);
  CHECK(std::abs(number(f, "inspections") - 17.7) < 0.05);
  CHECK(std::abs(number(f, "termination") - 119.7) < 0.05);
  CHECK(f.at("case") == "3");
}

TEST_CASE("plan with integer refinement and JSON output") {
  TempDir dir;
  const auto path = dir.file("plan.json");
  const auto r = run(led({"plan", "--criterion", "D", "--integer", "--radius", "2", "--out", path}));
  REQUIRE(r.code == 0);
  const auto f = report(r.out);
  CHECK(number(f, "integer_units") == std::round(number(f, "integer_units")));
  CHECK(number(f, "integer_objective") >= number(f, "objective"));
  std::ifstream in(path);
  std::stringstream json;
  json << in.rdbuf();
  CHECK(json.str().find("\"candidates\"") != std::string::npos);
  CHECK(json.str().find("\"integer_objective\"") != std::string::npos);
}

TEST_CASE("budget rescaling is homogeneous") {
  const auto base = run(led({"plan", "--criterion", "A"}));
  const auto scaled = run({"plan", "--criterion", "A", "--alpha", "0.065", "--gamma", "-0.77",
                           "--c-it", "0.06", "--c-mea", "3.8e-3", "--c-op", "5.4e-3", "--dt",
                           "5", "--budget", "2"});
  REQUIRE(base.code == 0);
  REQUIRE(scaled.code == 0);
  CHECK(base.out == scaled.out);
}

TEST_CASE("invalid and infeasible input") {
  const auto bad_p = run({"plan", "--criterion", "V", "--alpha", "0.065", "--gamma", "-0.77",
                          "--eta", "0.5", "--p", "1.3", "--c-it", "0.03", "--c-mea", "1.9e-3",
                          "--c-op", "2.7e-3", "--dt", "5"});
  CHECK(bad_p.code == 2);
  CHECK(bad_p.err.find("'p'") != std::string::npos);
  CHECK(bad_p.err.find("\"error\"") != std::string::npos);

  const auto broke = run({"plan", "--criterion", "D", "--alpha", "0.065", "--gamma", "-0.77",
                          "--c-it", "0.9", "--c-mea", "0.1", "--c-op", "0.01", "--dt", "5"});
  CHECK(broke.code == 2);
  CHECK(broke.err.find("infeasible") != std::string::npos);

  CHECK(run({"plan", "--criterion", "D"}).err.find("'alpha'") != std::string::npos);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"plan", "--alpha", "abc"}).code == 2);
  CHECK(run({"plan", "--help"}).code == 0);
}

TEST_CASE("config file supplies defaults and flags win") {
  TempDir dir;
  const auto path = dir.file("config.json");
  write(path, R"({"alpha": 0.065, "gamma": -0.77, "eta": 0.5, "p": 0.1, "c_it": 0.03,
                  "c_mea": 1.9e-3, "c_op": 2.7e-3, "dt": 5, "criterion": "D"})");
  const auto from_config = run({"plan", "--config", path, "--criterion", "A"});
  const auto direct = run(led({"plan", "--criterion", "A"}));
  REQUIRE(from_config.code == 0);
  CHECK(from_config.out == direct.out);

  write(path, R"({"alpha": 0.065, "colour": "red"})");
  const auto unknown = run({"plan", "--config", path});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("colour") != std::string::npos);
  write(path, R"({"alpha": "fast"})");
  CHECK(run({"plan", "--config", path}).err.find("alpha") != std::string::npos);
}

TEST_CASE("reported designs re-evaluate to the reported objective") {
  for (const std::string family : {"type1", "type2"}) {
    for (const std::string criterion : {"D", "A", "V"}) {
      const auto p = run(led({"plan", "--criterion", criterion, "--family", family,
                              "--precision", "17"}));
      REQUIRE(p.code == 0);
      const auto f = report(p.out);
      const auto e = run(led({"eval", "--criterion", criterion, "--family", family, "--units",
                              f.at("units"), "--inspections", f.at("inspections"),
                              "--termination", f.at("termination"), "--precision", "17"}));
      REQUIRE(e.code == 0);
      const auto g = report(e.out);
      CHECK(rel_err(number(g, "objective"), number(f, "objective")) < 1e-9);
      CHECK(std::abs(number(g, "cost") - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("eval of the laser example's original design") {
  const auto e = run({"eval", "--alpha", "0.028", "--gamma", "-2.073", "--criterion", "A",
                      "--units", "12", "--inspections", "5", "--interval", "50"});
  REQUIRE(e.code == 0);
  const auto f = report(e.out);
  CHECK(rel_err(number(f, "var_alpha"), 2.18e-5) < 0.02);
  CHECK(rel_err(number(f, "var_gamma"), 1.18e-2) < 0.02);
  const auto explicit_intervals =
      run({"eval", "--alpha", "0.028", "--gamma", "-2.073", "--criterion", "A", "--units", "12",
           "--intervals", "50,50,50,50,50"});
  CHECK(explicit_intervals.out == e.out);
}

TEST_CASE("curves locate the boundary crossings") {
  const std::vector<std::pair<std::string, double>> expected{{"A", 143.2}, {"V", 5.72}};
  const auto k = run(led({"curve", "--which", "K", "--tau-min", "0.1", 
                          "--points", "2000", "--precision", "12"}));
  REQUIRE(k.code == 0);
  const auto k_rows = csv_rows(k.out);
  for (const std::string criterion : {"D", "A", "V"}) {
    const auto phi = run(led({"curve", "--which", "phi", "--criterion", criterion, "--tau-min",
                              "0.1",  "--points", "2000", "--precision",
                              "12"}));
    REQUIRE(phi.code == 0);
    const auto rows = csv_rows(phi.out);
    REQUIRE(rows.size() == k_rows.size());
    std::vector<double> crossings;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double before = rows[i - 1][1] - k_rows[i - 1][4];
      const double after = rows[i][1] - k_rows[i][4];
      if ((before < 0) != (after < 0)) crossings.push_back(rows[i][0]);
    }
    REQUIRE(crossings.size() == 1);
    const auto c = fixtures::criterion_of(gdt::criterion_kind_from(criterion[0]),
                                          fixtures::kLedLife);
    const auto roots = gdt::boundary_roots(gdt::bind(fixtures::kLed, c), fixtures::led_cost());
    REQUIRE(roots.size() == 1);
    CHECK(rel_err(crossings[0], roots[0]) < 0.01);
    for (const auto& [name, value] : expected) {
      if (name == criterion) CHECK(rel_err(crossings[0], value) < 0.01);
    }
  }
}

TEST_CASE("objective curve has its minimum at the stationary interval") {
  const auto r = run({"curve", "--which", "objective", "--criterion", "V", "--alpha", "0.065",
                      "--gamma", "-0.77", "--eta", "0.5", "--p", "0.1", "--units", "10",
                      "--inspections", "5", "--tau-min", "1", "--tau-max", "1000", "--points",
                      "4000", "--precision", "12"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  const auto best = std::min_element(rows.begin(), rows.end(),
                                     [](const auto& a, const auto& b) { return a[1] < b[1]; });
  CHECK(std::abs((*best)[0] - 53.2) < 0.5);

  const auto single = run({"curve", "--which", "phi", "--criterion", "A", "--alpha", "0.065",
                           "--gamma", "-0.77", "--tau-min", "3", "--tau-max", "9", "--points",
                           "1"});
  REQUIRE(single.code == 0);
  CHECK(single.out.rfind("tau,phi\n3,", 0) == 0);
  CHECK(std::count(single.out.begin(), single.out.end(), '\n') == 2);
}

TEST_CASE("simulate and fit round trip") {
  TempDir dir;
  const auto data = dir.file("data.csv");
  const auto sim = run({"simulate", "--alpha", "0.028", "--gamma", "-2.073", "--units", "200",
                        "--times", "50,100,150,200,250", "--seed", "7", "--out", data});
  REQUIRE(sim.code == 0);
  const auto fit = run({"fit", "--data", data, "--precision", "12"});
  REQUIRE(fit.code == 0);
  const auto f = report(fit.out);
  CHECK(std::abs(number(f, "alpha") - 0.028) < 3 * std::sqrt(number(f, "var_alpha")));
  CHECK(std::abs(number(f, "gamma") + 2.073) < 3 * std::sqrt(number(f, "var_gamma")));

  const auto again = run({"simulate", "--alpha", "0.028", "--gamma", "-2.073", "--units", "3",
                          "--times", "1,2", "--seed", "7"});
  CHECK(again.out == run({"simulate", "--alpha", "0.028", "--gamma", "-2.073", "--units", "3",
                          "--times", "1,2", "--seed", "7"})
                         .out);
  CHECK(run({"simulate", "--alpha", "0.028", "--gamma", "-2", "--units", "2.5", "--times", "1"})
            .code == 2);
}

TEST_CASE("fit rejects bad data") {
  TempDir dir;
  const auto path = dir.file("bad.csv");
  write(path, "unit,time,value\nU1,1,0.5\nU1,2,0.4\n");
  const auto r = run({"fit", "--data", path});
  CHECK(r.code == 2);
  CHECK(r.err.find("U1") != std::string::npos);
  CHECK(r.err.find("time 2") != std::string::npos);
  write(path, "");
  CHECK(run({"fit", "--data", path}).code == 2);
  CHECK(run({"fit", "--data", dir.file("missing.csv")}).code == 2);
}

TEST_CASE("sensitivity tables") {
  const std::vector<std::string> laser{"--alpha", "0.028249", "--gamma", "-2.073", "--eta", "50",
                                       "--p",     "0.05",     "--c-it",  "7.56e-2", "--c-mea",
                                       "1.06e-3", "--c-op",   "1.17e-4", "--dt",    "5"};
  auto args = [&](std::vector<std::string> extra) {
    extra.insert(extra.end(), laser.begin(), laser.end());
    return extra;
  };
  const auto centre = run(args({"sensitivity", "--criterion", "A", "--multipliers", "0"}));
  REQUIRE(centre.code == 0);
  CHECK(centre.out == "gamma_multiplier,alpha_0\n0,100\n");

  const auto d = run(args({"sensitivity", "--criterion", "D"}));
  REQUIRE(d.code == 0);
  const auto d_rows = csv_rows(d.out);
  REQUIRE(d_rows.size() == 1);
  CHECK(d_rows[0].size() == 8);

  const auto a = run(args({"sensitivity", "--criterion", "A", "--family", "type1"}));
  CHECK(std::abs(csv_rows(a.out)[0][1] - 94.85) < 0.5);

  const auto v = run(args({"sensitivity", "--criterion", "V", "--multipliers", "-1,0,1"}));
  REQUIRE(v.code == 0);
  CHECK(csv_rows(v.out).size() == 3);

  const auto na = run(args({"sensitivity", "--criterion", "D", "--sigma-alpha", "0.02"}));
  REQUIRE(na.code == 0);
  CHECK(na.out.find("NA") != std::string::npos);
}
