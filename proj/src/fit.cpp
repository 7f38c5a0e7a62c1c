#include "gdt/fit.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "gdt/error.hpp"
#include "gdt/roots.hpp"
#include "gdt/specfun.hpp"

namespace gdt {
namespace {

std::string format_number(double x) {
  std::ostringstream out;
  out.precision(10);
  out << x;
  return out.str();
}

void validate_unit(const UnitPath& unit) {
  if (unit.observations.empty()) throw DomainError("unit " + unit.id + " has no observations");
  double last_time = 0.0;
  double last_value = 0.0;
  for (const auto& obs : unit.observations) {
    if (!std::isfinite(obs.time) || !std::isfinite(obs.value)) {
      throw DomainError("unit " + unit.id + ": non-finite observation");
    }
    if (!(obs.time > last_time)) {
      throw DomainError("unit " + unit.id + " at time " + format_number(obs.time) +
                        ": times must be positive and strictly increasing");
    }
    if (obs.value < last_value) {
      throw DomainError("unit " + unit.id + " at time " + format_number(obs.time) +
                        ": value decreases (degradation paths are monotone)");
    }
    last_time = obs.time;
    last_value = obs.value;
  }
}

template <typename Visit>
void for_each_increment(const DegradationDataset& data, Visit visit) {
  for (const auto& unit : data.units()) {
    double t0 = 0.0, z0 = 0.0;
    for (const auto& obs : unit.observations) {
      visit(unit, obs, obs.time - t0, obs.value - z0);
      t0 = obs.time;
      z0 = obs.value;
    }
  }
}

void require_positive_increment(const UnitPath& unit, const Observation& obs, double dz) {
  if (!(dz > 0.0)) {
    throw DomainError("unit " + unit.id + " at time " + format_number(obs.time) +
                      ": zero increment; the inspection interval is below the measurement "
                      "resolution (see choose_min_interval)");
  }
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& field, int line, const char* column) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw DomainError("line " + std::to_string(line) + ": invalid " + column + " '" + field + "'");
  }
  return value;
}

// Uniform on the open interval (0, 1) from the top 53 bits.
double uniform_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Marsaglia polar method; the second variate is discarded to keep the
// sampler stateless.
double standard_normal(std::mt19937_64& rng) {
  for (;;) {
    const double u = 2.0 * uniform_open(rng) - 1.0;
    const double v = 2.0 * uniform_open(rng) - 1.0;
    const double s = u * u + v * v;
    if (s < 1.0 && s > 0.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

// Gam(shape, 1) by Marsaglia–Tsang. Shapes below 1 draw at shape + 1 and
// scale by U^(1/shape).
double standard_gamma(std::mt19937_64& rng, double shape) {
  if (shape < 1.0) {
    const double g = standard_gamma(rng, shape + 1.0);
    return std::exp(std::log(g) + std::log(uniform_open(rng)) / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = standard_normal(rng);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = uniform_open(rng);
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

DegradationDataset::DegradationDataset(std::vector<UnitPath> units) : units_(std::move(units)) {
  if (units_.empty()) throw DomainError("dataset has no units");
  for (const auto& unit : units_) validate_unit(unit);
}

std::size_t DegradationDataset::increment_count() const {
  std::size_t count = 0;
  for (const auto& unit : units_) count += unit.observations.size();
  return count;
}

double DegradationDataset::total_time() const {
  double sum = 0.0;
  for (const auto& unit : units_) sum += unit.observations.back().time;
  return sum;
}

double DegradationDataset::total_increment() const {
  double sum = 0.0;
  for (const auto& unit : units_) sum += unit.observations.back().value;
  return sum;
}

DegradationDataset read_dataset_csv(std::istream& in) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw DomainError("empty dataset");
  if (trim(line) != "unit,time,value") {
    throw DomainError("line " + std::to_string(number) + ": expected header 'unit,time,value'");
  }

  std::vector<UnitPath> units;
  std::unordered_set<std::string> seen;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream row(line);
    for (std::string field; std::getline(row, field, ',');) fields.push_back(trim(field));
    if (fields.size() != 3) {
      throw DomainError("line " + std::to_string(number) + ": expected 3 fields, got " +
                        std::to_string(fields.size()));
    }
    const std::string& id = fields[0];
    if (id.empty()) throw DomainError("line " + std::to_string(number) + ": empty unit id");
    const double time = parse_number(fields[1], number, "time");
    const double value = parse_number(fields[2], number, "value");
    if (units.empty() || units.back().id != id) {
      if (!seen.insert(id).second) {
        throw DomainError("line " + std::to_string(number) + ": rows of unit " + id +
                          " are not contiguous");
      }
      units.push_back({id, {}});
    }
    auto& obs = units.back().observations;
    const double last_time = obs.empty() ? 0.0 : obs.back().time;
    const double last_value = obs.empty() ? 0.0 : obs.back().value;
    if (!(time > last_time)) {
      throw DomainError("line " + std::to_string(number) + ": unit " + id + " at time " +
                        fields[1] + ": times must be positive and increasing");
    }
    if (value < last_value) {
      throw DomainError("line " + std::to_string(number) + ": unit " + id + " at time " +
                        fields[1] + ": value decreases");
    }
    obs.push_back({time, value});
  }
  if (units.empty()) throw DomainError("dataset has no rows");
  return DegradationDataset(std::move(units));
}

void write_dataset_csv(std::ostream& out, const DegradationDataset& data, int precision) {
  const auto old = out.precision(precision);
  out << "unit,time,value\n";
  for (const auto& unit : data.units()) {
    for (const auto& obs : unit.observations) {
      out << unit.id << ',' << obs.time << ',' << obs.value << '\n';
    }
  }
  out.precision(old);
}

double log_likelihood(const ProcessParams& params, const DegradationDataset& data) {
  const double alpha = params.alpha();
  const double rate = params.beta();
  const double log_rate = std::log(alpha) - params.gamma();
  double sum = 0.0;
  for_each_increment(data, [&](const UnitPath& unit, const Observation& obs, double dt, double dz) {
    require_positive_increment(unit, obs, dz);
    const double shape = alpha * dt;
    sum += shape * log_rate - log_gamma(shape) + (shape - 1.0) * std::log(dz) - rate * dz;
  });
  return sum;
}

Score score(const ProcessParams& params, const DegradationDataset& data) {
  const double alpha = params.alpha();
  const double log_rate = std::log(alpha) - params.gamma();
  const double scale = std::exp(-params.gamma());
  Score s{0.0, 0.0};
  for_each_increment(data, [&](const UnitPath& unit, const Observation& obs, double dt, double dz) {
    require_positive_increment(unit, obs, dz);
    s.by_alpha += dt * (log_rate + 1.0 - digamma(alpha * dt) + std::log(dz)) - scale * dz;
  });
  s.by_gamma = alpha * (scale * data.total_increment() - data.total_time());
  return s;
}

Matrix2 covariance(const ProcessParams& params, const DegradationDataset& data) {
  Matrix2 info;
  for (const auto& unit : data.units()) {
    std::vector<double> intervals;
    double t0 = 0.0;
    for (const auto& obs : unit.observations) {
      intervals.push_back(obs.time - t0);
      t0 = obs.time;
    }
    const Matrix2 part = fisher_information(params, Design::aperiodic(1.0, std::move(intervals)));
    info.a11 += part.a11;
    info.a12 += part.a12;
    info.a21 += part.a21;
    info.a22 += part.a22;
  }
  return info.inverse();
}

FitResult mle_fit(const DegradationDataset& data) {
  if (data.increment_count() < 2) throw DomainError("mle_fit needs at least 2 increments");
  const double gamma = std::log(data.total_increment() / data.total_time());

  // Profile score in α at γ̂. It is decreasing, positive near 0 and tends to
  // a non-positive limit (Jensen), so the root is unique when it exists.
  double offset = 0.0;
  std::vector<double> spans;
  for_each_increment(data, [&](const UnitPath& unit, const Observation& obs, double dt, double dz) {
    require_positive_increment(unit, obs, dz);
    offset += dt * (std::log(dz) - gamma);
    spans.push_back(dt);
  });
  int evaluations = 0;
  const auto profile = [&](double alpha) {
    ++evaluations;
    double sum = offset;
    for (double dt : spans) sum += dt * (std::log(alpha) - digamma(alpha * dt));
    return sum;
  };

  double lo = 1e-8;
  while (profile(lo) <= 0.0) {
    lo /= 16.0;
    if (lo < 1e-200) throw NumericalError("mle_fit: profile score not positive near zero");
  }
  double hi = 1.0;
  while (profile(hi) >= 0.0) {
    hi *= 2.0;
    if (hi > 1e12) {
      throw NumericalError("mle_fit: no finite maximiser; last alpha " + format_number(hi) +
                           ", profile score " + format_number(profile(hi)));
    }
  }
  if (hi > 1.0) lo = hi / 2.0;
  const double alpha = solve_bracketed(profile, {lo, hi}, 1e-15);

  const ProcessParams params(alpha, gamma);
  return {params, covariance(params, data), log_likelihood(params, data), score(params, data),
          evaluations};
}

DegradationDataset simulate(const ProcessParams& params, int units, std::span<const double> times,
                            std::uint64_t seed) {
  if (units < 1) throw DomainError("simulate: need at least one unit");
  if (times.empty()) throw DomainError("simulate: need at least one inspection time");
  double previous = 0.0;
  for (double t : times) {
    if (!(t > previous)) throw DomainError("simulate: times must be positive and increasing");
    previous = t;
  }
  const double rate = params.beta();
  std::vector<UnitPath> paths;
  paths.reserve(static_cast<std::size_t>(units));
  for (int i = 0; i < units; ++i) {
    std::seed_seq substream{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                            static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(substream);
    UnitPath path{std::to_string(i + 1), {}};
    double t0 = 0.0, z = 0.0;
    for (double t : times) {
      z += standard_gamma(rng, params.alpha() * (t - t0)) / rate;
      path.observations.push_back({t, z});
      t0 = t;
    }
    paths.push_back(std::move(path));
  }
  return DegradationDataset(std::move(paths));
}

}  // namespace gdt
