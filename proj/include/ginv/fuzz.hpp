#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ginv/io.hpp"

namespace ginv {

/// SplitMix64 (Steele, Lea, Flood 2014). Fully specified, so streams are
/// identical on every platform:
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, bound) by rejection of the top partial range.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_;
};

/// Seed of the stream owned by one trial:
///   mix(seed ^ fnv1a64(suite)) advanced by (trial + 1) golden-ratio steps.
/// Streams depend only on (seed, suite, trial), never on evaluation order.
std::uint64_t trial_seed(std::uint64_t seed, std::string_view suite, std::uint64_t trial);

struct FuzzOptions {
  Field field = Field::prime(7);
  /// Maximum matrix dimension; trial t uses n = 1 + t mod dim unless fixed_dim.
  std::size_t dim = 4;
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  bool fixed_dim = false;
};

struct FuzzFailure {
  std::size_t trial = 0;
  std::string assertion;
  std::string detail;
  InputDocument input;
  /// Subcommand line reproducing the failure against `input` (FILE is the
  /// serialized input document), or empty when no subcommand covers it.
  std::string replay;
};

struct FuzzReport {
  std::string suite;
  Field field;
  std::size_t dim = 0;
  bool fixed_dim = false;
  std::size_t trials = 0;
  std::size_t passes = 0;
  std::uint64_t seed = 0;
  std::vector<FuzzFailure> failures;
  /// Outcome counters (e.g. how many samples were stable); deterministic.
  std::map<std::string, std::size_t> tallies;
  /// Per-suite reports when suite == "all".
  std::vector<FuzzReport> parts;

  bool ok() const { return failures.empty(); }
};

/// Suite names accepted by run_fuzz, in the order "all" runs them.
const std::vector<std::string>& fuzz_suites();

/// Throws InputError for an unknown suite.
FuzzReport run_fuzz(std::string_view suite, const FuzzOptions& options);

nlohmann::json report_to_json(const FuzzReport& report);
/// Canonical report text; byte-identical for identical (seed, parameters).
std::string serialize(const FuzzReport& report);

}  // namespace ginv
