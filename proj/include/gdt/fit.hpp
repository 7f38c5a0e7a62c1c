#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gdt/criteria.hpp"
#include "gdt/lifetime.hpp"

namespace gdt {

struct Observation {
  double time;
  /// Cumulative degradation at `time`; the path starts from 0 at time 0.
  double value;
};

struct UnitPath {
  std::string id;
  std::vector<Observation> observations;
};

/// Degradation paths of several units. Inspection times may differ between
/// units.
class DegradationDataset {
 public:
  /// Throws DomainError when a unit is empty, a time is not positive or not
  /// strictly increasing, or a value is negative or decreases.
  explicit DegradationDataset(std::vector<UnitPath> units);

  const std::vector<UnitPath>& units() const { return units_; }
  std::size_t increment_count() const;
  double total_time() const;
  double total_increment() const;

 private:
  std::vector<UnitPath> units_;
};

/// Reads `unit,time,value` CSV rows sorted by unit then time. Parse errors
/// name the offending line.
DegradationDataset read_dataset_csv(std::istream& in);
void write_dataset_csv(std::ostream& out, const DegradationDataset& data, int precision = 17);

/// Σ over increments of the gamma log-density of Δz with shape αΔt and rate
/// α·e^(−γ). Throws DomainError on a zero increment.
double log_likelihood(const ProcessParams& params, const DegradationDataset& data);

struct Score {
  double by_alpha;
  double by_gamma;
};

Score score(const ProcessParams& params, const DegradationDataset& data);

/// Inverse expected Fisher information for the dataset's own inspection
/// times.
Matrix2 covariance(const ProcessParams& params, const DegradationDataset& data);

struct FitResult {
  ProcessParams params;
  Matrix2 covariance;
  double log_likelihood;
  Score gradient;
  int iterations;
};

/// Maximum-likelihood fit. γ̂ = log(ΣΔz/ΣΔt) in closed form; α̂ is the root
/// of the profile score. Throws NumericalError when the profile has no
/// finite maximiser (all increments proportional to their spans).
FitResult mle_fit(const DegradationDataset& data);

/// `units` independent paths inspected at `times`, reproducible for a given
/// seed on every platform.
DegradationDataset simulate(const ProcessParams& params, int units,
                            std::span<const double> times, std::uint64_t seed);

}  // namespace gdt
