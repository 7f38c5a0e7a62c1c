#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "gdt/analysis.hpp"
#include "gdt/error.hpp"
#include "gdt/fit.hpp"
#include "gdt/plan_type1.hpp"
#include "gdt/plan_type2.hpp"
#include "gdt/roots.hpp"

namespace gdt::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Options {
  // Shared.
  std::optional<double> alpha, gamma, eta, p;
  std::optional<double> c_it, c_mea, c_op, dt, budget;
  std::optional<std::string> criterion, family, config, out;
  std::optional<std::uint64_t> seed;
  std::optional<bool> integer;
  std::optional<int> radius, precision;
  // Command specific.
  std::optional<double> units, inspections, interval, termination;
  std::optional<std::string> intervals, data, which, grid, times, multipliers;
  std::optional<double> tau_min, tau_max, sigma_alpha, sigma_gamma;
  std::optional<int> points;
};

[[noreturn]] void invalid(const std::string& field, const std::string& rule, double value) {
  std::ostringstream msg;
  msg << "invalid value for '" << field << "': " << rule << ", got " << value;
  throw DomainError(msg.str());
}

template <typename T>
T require(const std::optional<T>& value, const std::string& field) {
  if (!value) throw DomainError("missing field '" + field + "'");
  return *value;
}

double require_positive(const std::optional<double>& value, const std::string& field) {
  const double v = require(value, field);
  if (!(v > 0.0) || !std::isfinite(v)) invalid(field, "must be a positive number", v);
  return v;
}

// Config values fill only the fields not given on the command line.
template <typename T>
void fill(std::optional<T>& field, const Json& config, const std::string& key) {
  if (field || !config.contains(key)) return;
  try {
    field = config.at(key).get<T>();
  } catch (const Json::exception&) {
    throw DomainError("config field '" + key + "' has the wrong type");
  }
}

void merge_config(Options& o) {
  if (!o.config) return;
  std::ifstream in(*o.config);
  if (!in) throw DomainError("cannot read config '" + *o.config + "'");
  Json config;
  try {
    config = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DomainError("config '" + *o.config + "' is not valid JSON: " + e.what());
  }
  if (!config.is_object()) throw DomainError("config must be a JSON object");
  static const std::vector<std::string> known{
      "alpha", "gamma", "eta", "p", "c_it", "c_mea", "c_op", "dt", "budget", "criterion",
      "family", "out", "seed", "integer", "radius", "precision", "units", "inspections",
      "interval", "termination", "intervals", "data", "which", "grid", "times", "multipliers",
      "tau_min", "tau_max", "sigma_alpha", "sigma_gamma", "points"};
  for (const auto& item : config.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw DomainError("unknown config field '" + item.key() + "'");
    }
  }
  fill(o.alpha, config, "alpha");
  fill(o.gamma, config, "gamma");
  fill(o.eta, config, "eta");
  fill(o.p, config, "p");
  fill(o.c_it, config, "c_it");
  fill(o.c_mea, config, "c_mea");
  fill(o.c_op, config, "c_op");
  fill(o.dt, config, "dt");
  fill(o.budget, config, "budget");
  fill(o.criterion, config, "criterion");
  fill(o.family, config, "family");
  fill(o.out, config, "out");
  fill(o.seed, config, "seed");
  fill(o.integer, config, "integer");
  fill(o.radius, config, "radius");
  fill(o.precision, config, "precision");
  fill(o.units, config, "units");
  fill(o.inspections, config, "inspections");
  fill(o.interval, config, "interval");
  fill(o.termination, config, "termination");
  fill(o.intervals, config, "intervals");
  fill(o.data, config, "data");
  fill(o.which, config, "which");
  fill(o.grid, config, "grid");
  fill(o.times, config, "times");
  fill(o.multipliers, config, "multipliers");
  fill(o.tau_min, config, "tau_min");
  fill(o.tau_max, config, "tau_max");
  fill(o.sigma_alpha, config, "sigma_alpha");
  fill(o.sigma_gamma, config, "sigma_gamma");
  fill(o.points, config, "points");
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& field) {
  std::vector<T> values;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    T value{};
    const auto* end = item.data() + item.size();
    const auto [ptr, ec] = std::from_chars(item.data(), end, value);
    if (item.empty() || ec != std::errc() || ptr != end) {
      throw DomainError("invalid value for '" + field + "': cannot parse '" + item + "'");
    }
    values.push_back(value);
  }
  if (values.empty()) throw DomainError("field '" + field + "' is empty");
  return values;
}

ProcessParams read_params(const Options& o) {
  const double alpha = require_positive(o.alpha, "alpha");
  const double gamma = require(o.gamma, "gamma");
  if (!std::isfinite(gamma)) invalid("gamma", "must be finite", gamma);
  return ProcessParams(alpha, gamma);
}

LifetimeSpec read_lifetime(const Options& o) {
  const double eta = require_positive(o.eta, "eta");
  const double p = require(o.p, "p");
  if (!(p > 0.0 && p < 1.0)) invalid("p", "must be in (0, 1)", p);
  return LifetimeSpec(eta, p);
}

Criterion read_criterion(const Options& o) {
  const std::string name = require(o.criterion, "criterion");
  if (name.size() != 1) throw DomainError("invalid value for 'criterion': use D, A or V");
  const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  switch (letter) {
    case 'D': return Criterion::d();
    case 'A': return Criterion::a();
    case 'V': return Criterion::v(read_lifetime(o));
    default: throw DomainError("invalid value for 'criterion': use D, A or V");
  }
}

DesignFamily read_family(const Options& o) {
  return design_family_from(o.family.value_or("type1"));
}

bool has_costs(const Options& o) { return o.c_it || o.c_mea || o.c_op; }

CostModel read_cost(const Options& o) {
  const double c_it = require_positive(o.c_it, "c_it");
  const double c_mea = require(o.c_mea, "c_mea");
  if (!(c_mea >= 0.0) || !std::isfinite(c_mea)) invalid("c_mea", "must be non-negative", c_mea);
  const double c_op = require_positive(o.c_op, "c_op");
  const double dt = require_positive(o.dt, "dt");
  const double budget = o.budget ? require_positive(o.budget, "budget") : 1.0;
  return CostModel::with_budget(c_it, c_mea, c_op, dt, budget);
}

int precision_of(const Options& o, int fallback) {
  const int digits = o.precision.value_or(fallback);
  if (digits < 1 || digits > 17) invalid("precision", "must be in [1, 17]", digits);
  return digits;
}

class Formatter {
 public:
  explicit Formatter(int digits) : digits_(digits) {}
  std::string operator()(double x) const {
    std::ostringstream s;
    s.precision(digits_);
    s << x;
    return s.str();
  }

 private:
  int digits_;
};

// A flat report printed as "key: value" and optionally saved as JSON.
class Report {
 public:
  explicit Report(Formatter fmt) : fmt_(fmt) {}
  void add(const std::string& key, double value) {
    lines_.emplace_back(key, fmt_(value));
    json_[key] = value;
  }
  void add(const std::string& key, const std::string& value) {
    lines_.emplace_back(key, value);
    json_[key] = value;
  }
  void attach(const std::string& key, Json value) { json_[key] = std::move(value); }

  void print(std::ostream& out) const {
    for (const auto& [key, value] : lines_) out << key << ": " << value << '\n';
  }
  const Json& json() const { return json_; }

 private:
  Formatter fmt_;
  std::vector<std::pair<std::string, std::string>> lines_;
  Json json_ = Json::object();
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path);
  if (!file) throw DomainError("cannot write '" + path + "'");
  file << content;
}

void emit(const Options& o, std::ostream& out, const std::string& content) {
  if (o.out) {
    write_file(*o.out, content);
  } else {
    out << content;
  }
}

void finish(const Options& o, std::ostream& out, const Report& report) {
  report.print(out);
  if (o.out) write_file(*o.out, report.json().dump(2) + "\n");
}

void describe_design(Report& r, const std::string& prefix, const Design& design) {
  r.add(prefix + "units", design.units());
  r.add(prefix + "inspections", design.inspections());
  r.add(prefix + "termination", design.termination());
  if (const auto* periodic = std::get_if<Periodic>(&design.schedule())) {
    r.add(prefix + "interval", periodic->interval);
  } else if (const auto* lf = std::get_if<LongFirst>(&design.schedule())) {
    r.add(prefix + "first_interval", lf->termination - (design.inspections() - 1) * lf->min_interval);
    r.add(prefix + "min_interval", lf->min_interval);
  }
}

Json candidates_json(const PlanResult& result) {
  Json list = Json::array();
  for (const auto& c : result.diagnostics) {
    Json item;
    item["case"] = c.case_label;
    item["units"] = std::isnan(c.units) ? Json() : Json(c.units);
    item["inspections"] = std::isnan(c.inspections) ? Json() : Json(c.inspections);
    item["termination"] = std::isnan(c.termination) ? Json() : Json(c.termination);
    item["feasible"] = c.feasible;
    item["conditions_hold"] = c.conditions_hold;
    item["objective"] = std::isnan(c.objective) ? Json() : Json(c.objective);
    item["note"] = c.note;
    list.push_back(std::move(item));
  }
  return list;
}

int cmd_plan(const Options& o, std::ostream& out) {
  const auto params = read_params(o);
  const auto criterion = read_criterion(o);
  const auto family = read_family(o);
  const auto cost = read_cost(o);
  const auto bound = bind(params, criterion);
  const auto result = plan(bound, cost, family);

  Report r{Formatter(precision_of(o, 6))};
  r.add("family", std::string(to_string(family)));
  r.add("criterion", std::string(1, to_char(criterion.kind())));
  r.add("case", std::to_string(result.case_label));
  r.add("tag", result.tag);
  describe_design(r, "", result.design);
  r.add("objective", result.objective);
  r.add("cost", cost.total(result.design));
  r.attach("candidates", candidates_json(result));
  if (o.integer.value_or(false)) {
    const int radius = o.radius.value_or(3);
    if (radius < 1) invalid("radius", "must be at least 1", radius);
    const auto rounded = integer_search(bound, cost, family, result, radius);
    describe_design(r, "integer_", rounded.design);
    r.add("integer_objective", rounded.objective);
    r.add("integer_efficiency", relative_efficiency(bound, result.design, rounded.design));
  }
  finish(o, out, r);
  return kSuccess;
}

Design read_design(const Options& o) {
  const double units = require(o.units, "units");
  if (o.intervals) return Design::aperiodic(units, parse_list<double>(*o.intervals, "intervals"));
  const double inspections = require(o.inspections, "inspections");
  if (read_family(o) == DesignFamily::Type2) {
    return Design::long_first(units, inspections, require(o.termination, "termination"),
                              require_positive(o.dt, "dt"));
  }
  if (o.interval) return Design::periodic(units, inspections, *o.interval);
  return Design::periodic(units, inspections, require(o.termination, "termination") / inspections);
}

int cmd_eval(const Options& o, std::ostream& out) {
  const auto params = read_params(o);
  const auto criterion = read_criterion(o);
  const auto design = read_design(o);
  const auto cov = fisher_information(params, design).inverse();
  Report r{Formatter(precision_of(o, 6))};
  r.add("criterion", std::string(1, to_char(criterion.kind())));
  r.add("objective", objective(params, criterion, design));
  r.add("var_alpha", cov.a11);
  r.add("var_gamma", cov.a22);
  if (has_costs(o)) r.add("cost", read_cost(o).total(design));
  finish(o, out, r);
  return kSuccess;
}

int cmd_fit(const Options& o, std::ostream& out) {
  const std::string path = require(o.data, "data");
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read data '" + path + "'");
  const auto data = read_dataset_csv(in);
  const auto fit = mle_fit(data);
  Report r{Formatter(precision_of(o, 6))};
  r.add("units", static_cast<double>(data.units().size()));
  r.add("increments", static_cast<double>(data.increment_count()));
  r.add("alpha", fit.params.alpha());
  r.add("gamma", fit.params.gamma());
  r.add("var_alpha", fit.covariance.a11);
  r.add("var_gamma", fit.covariance.a22);
  r.add("log_likelihood", fit.log_likelihood);
  finish(o, out, r);
  return kSuccess;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const auto params = read_params(o);
  const double units = require_positive(o.units, "units");
  if (units != std::floor(units) || units > 1e7) invalid("units", "must be a whole number", units);
  const auto times = parse_list<double>(require(o.times, "times"), "times");
  const auto data = simulate(params, static_cast<int>(units), times, o.seed.value_or(1));
  std::ostringstream csv;
  write_dataset_csv(csv, data, precision_of(o, 17));
  emit(o, out, csv.str());
  return kSuccess;
}

int cmd_sensitivity(const Options& o, std::ostream& out) {
  const auto params = read_params(o);
  const auto criterion = read_criterion(o);
  const auto family = read_family(o);
  const auto cost = read_cost(o);
  SensitivityGrid grid;
  if (o.sigma_alpha) grid.sigma_alpha = require_positive(o.sigma_alpha, "sigma_alpha");
  if (o.sigma_gamma) grid.sigma_gamma = require_positive(o.sigma_gamma, "sigma_gamma");
  if (o.multipliers) grid.multipliers = parse_list<int>(*o.multipliers, "multipliers");
  const auto table = sensitivity_table(params, criterion, cost, family, grid);

  const Formatter fmt(precision_of(o, 6));
  std::ostringstream csv;
  csv << "gamma_multiplier";
  for (int k : table.alpha_multipliers) csv << ",alpha_" << k;
  csv << '\n';
  for (std::size_t i = 0; i < table.cells.size(); ++i) {
    csv << table.gamma_multipliers[i];
    for (const auto& cell : table.cells[i]) {
      csv << ',' << (cell.efficiency ? fmt(100.0 * *cell.efficiency) : std::string("NA"));
    }
    csv << '\n';
  }
  emit(o, out, csv.str());
  return kSuccess;
}

int cmd_curve(const Options& o, std::ostream& out) {
  const std::string which = o.which.value_or("phi");
  if (which != "phi" && which != "K" && which != "objective") {
    throw DomainError("invalid value for 'which': use phi, K or objective");
  }
  const double tau_min = o.tau_min ? require_positive(o.tau_min, "tau_min") : 0.1;
  const double tau_max = o.tau_max ? require_positive(o.tau_max, "tau_max")
                         : has_costs(o) ? read_cost(o).max_interval()
                                        : require_positive(o.tau_max, "tau_max");
  const int points = o.points.value_or(200);
  if (points < 1) invalid("points", "must be at least 1", points);
  if (tau_max < tau_min) invalid("tau_max", "must not be below tau_min", tau_max);
  const std::string spacing = o.grid.value_or("log");
  if (spacing != "log" && spacing != "linear") {
    throw DomainError("invalid value for 'grid': use log or linear");
  }
  const std::vector<double> taus =
      points == 1 ? std::vector<double>{tau_min}
      : spacing == "log" ? log_grid(tau_min, tau_max, points)
                         : linear_grid(tau_min, tau_max, points);

  const Formatter fmt(precision_of(o, 6));
  std::ostringstream csv;
  if (which == "K") {
    const auto cost = read_cost(o);
    csv << "tau,K1,K2,K3,K\n";
    for (double tau : taus) {
      const auto k = k_boundaries(cost, tau);
      csv << fmt(tau) << ',' << fmt(k.k1) << ',' << fmt(k.k2) << ',' << fmt(k.k3) << ','
          << fmt(k.k) << '\n';
    }
  } else {
    const auto bound = bind(read_params(o), read_criterion(o));
    const double units = o.units.value_or(1.0);
    const double inspections = o.inspections.value_or(1.0);
    csv << "tau," << which << '\n';
    for (double tau : taus) {
      const double value = which == "phi"
                               ? phi_tau(bound, tau)
                               : objective(bound, Design::periodic(units, inspections, tau));
      csv << fmt(tau) << ',' << fmt(value) << '\n';
    }
  }
  emit(o, out, csv.str());
  return kSuccess;
}

void add_shared(CLI::App& cmd, Options& o) {
  cmd.add_option("--alpha", o.alpha, "Shape rate alpha > 0");
  cmd.add_option("--gamma", o.gamma, "Log drift gamma");
  cmd.add_option("--eta", o.eta, "Failure threshold (V criterion)");
  cmd.add_option("--p", o.p, "Lifetime quantile level in (0, 1) (V criterion)");
  cmd.add_option("--criterion", o.criterion, "D, A or V");
  cmd.add_option("--family", o.family, "type1 (periodic) or type2 (long first interval)");
  cmd.add_option("--c-it", o.c_it, "Cost per unit");
  cmd.add_option("--c-mea", o.c_mea, "Cost per inspection of one unit");
  cmd.add_option("--c-op", o.c_op, "Cost per unit of test time");
  cmd.add_option("--dt", o.dt, "Minimum inspection interval");
  cmd.add_option("--budget", o.budget, "Total budget the costs refer to (default 1)");
  cmd.add_option("--config", o.config, "JSON file with default values; flags win");
  cmd.add_option("--out", o.out, "Output file");
  cmd.add_option("--seed", o.seed, "Random seed");
  cmd.add_flag_callback("--integer", [&o] { o.integer = true; }, "Also search integer designs");
  cmd.add_option("--radius", o.radius, "Integer search box half-width (default 3)");
  cmd.add_option("--precision", o.precision, "Significant digits (default 6)");
}

void error_record(std::ostream& err, const char* kind, const std::string& message) {
  err << Json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Optimal degradation test planning for gamma processes", "gdt"};
  app.require_subcommand(1);

  auto* plan_cmd = app.add_subcommand("plan", "Cost-constrained optimal design");
  auto* eval_cmd = app.add_subcommand("eval", "Objective and variances of a given design");
  auto* fit_cmd = app.add_subcommand("fit", "Maximum-likelihood fit of degradation data");
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate degradation paths as CSV");
  auto* sens_cmd = app.add_subcommand("sensitivity", "Relative efficiency under misspecification");
  auto* curve_cmd = app.add_subcommand("curve", "Tabulate phi, K or the objective over tau");
  for (auto* cmd : {plan_cmd, eval_cmd, fit_cmd, sim_cmd, sens_cmd, curve_cmd}) add_shared(*cmd, o);

  eval_cmd->add_option("--units", o.units, "Number of units");
  eval_cmd->add_option("--inspections", o.inspections, "Inspections per unit");
  eval_cmd->add_option("--interval", o.interval, "Periodic interval (type1)");
  eval_cmd->add_option("--termination", o.termination, "Test duration");
  eval_cmd->add_option("--intervals", o.intervals, "Comma-separated explicit intervals");
  fit_cmd->add_option("--data", o.data, "CSV with header unit,time,value");
  sim_cmd->add_option("--units", o.units, "Number of units");
  sim_cmd->add_option("--times", o.times, "Comma-separated inspection times");
  sens_cmd->add_option("--sigma-alpha", o.sigma_alpha, "Standard deviation of alpha");
  sens_cmd->add_option("--sigma-gamma", o.sigma_gamma, "Standard deviation of gamma");
  sens_cmd->add_option("--multipliers", o.multipliers, "Comma-separated deviation multipliers");
  curve_cmd->add_option("--which", o.which, "phi, K or objective");
  curve_cmd->add_option("--tau-min", o.tau_min, "Smallest interval (default 0.1)");
  curve_cmd->add_option("--tau-max", o.tau_max, "Largest interval (default: longest affordable)");
  curve_cmd->add_option("--points", o.points, "Grid size (default 200)");
  curve_cmd->add_option("--grid", o.grid, "log or linear spacing");
  curve_cmd->add_option("--units", o.units, "Units for the objective curve");
  curve_cmd->add_option("--inspections", o.inspections, "Inspections for the objective curve");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    error_record(err, "invalid_input", e.what());
    return kInvalidInput;
  }

  try {
    merge_config(o);
    if (plan_cmd->parsed()) return cmd_plan(o, out);
    if (eval_cmd->parsed()) return cmd_eval(o, out);
    if (fit_cmd->parsed()) return cmd_fit(o, out);
    if (sim_cmd->parsed()) return cmd_simulate(o, out);
    if (sens_cmd->parsed()) return cmd_sensitivity(o, out);
    return cmd_curve(o, out);
  } catch (const InfeasibleError& e) {
    error_record(err, "infeasible", e.what());
    return kInvalidInput;
  } catch (const DomainError& e) {
    error_record(err, "invalid_input", e.what());
    return kInvalidInput;
  } catch (const std::exception& e) {
    error_record(err, "numeric_failure", e.what());
    return kNumericFailure;
  }
}

}  // namespace gdt::cli
