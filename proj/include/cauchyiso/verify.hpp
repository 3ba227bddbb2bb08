#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cauchyiso/types.hpp"

namespace cauchyiso {

/// Deterministic splitmix64 stream; the harness never uses the standard
/// library distributions so reports are byte-identical across platforms
/// and thread counts.
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed) : state_(seed) {}
  uint64_t next_u64();
  double uniform01();  // [0, 1)
  double uniform(double lo, double hi);
  double log_uniform(double lo, double hi);
  int uniform_int(int lo, int hi);  // inclusive
 private:
  uint64_t state_;
};

/// Stable per-(check, sample) seed derivation.
uint64_t mix_seed(uint64_t seed, uint64_t stream, uint64_t index);

struct Range {
  double lo;
  double hi;
};

struct SweepConfig {
  uint64_t seed = 42;
  long samples = 1000;
  Range alpha_range{1e-3, 10.0};
  double alpha_zero_weight = 0.2;  // atom at alpha = 0
  int n_min = 1;
  int n_max = 8;
  Range a_magnitude{1e-3, 1e3};  // |a|, sign drawn separately
  Range width_range{1e-3, 1e3};  // b - a
  Range r_range{1e-3, 1e3};
  std::vector<std::string> selection;  // inequality ids; empty = all
  int threads = 0;                     // 0 = hardware concurrency
  void validate() const;
};

enum class Outcome { pass, fail, expected_fail, skipped, error };

/// Input drawn for one evaluation; coords layout is check-specific.
struct CheckSample {
  std::vector<double> coords;
  int n = 1;
};

struct SampleEval {
  Outcome outcome = Outcome::skipped;
  double lhs = std::numeric_limits<double>::quiet_NaN();
  double rhs = std::numeric_limits<double>::quiet_NaN();
  double margin = std::numeric_limits<double>::quiet_NaN();
};

struct Check {
  std::string id;
  std::function<CheckSample(RandomSource&, const SweepConfig&)> draw;
  std::function<SampleEval(const CheckSample&)> eval;
  std::vector<double> shrink_anchor;  // same arity as coords; empty = no shrink
};

/// All registered checks, in stable order.
const std::vector<Check>& check_registry();
std::vector<std::string> check_ids();

struct Counterexample {
  std::vector<double> coords;
  int n = 1;
  double margin = 0.0;
};

struct VerificationReport {
  std::string inequality;
  long n_samples = 0;
  long n_fail = 0;           // unexpected failures
  long n_expected_fail = 0;  // failures exactly where the theorem predicts them
  long n_skipped = 0;        // hypothesis unmet / out of numeric domain
  long n_error = 0;          // numeric errors from lower layers
  double worst_margin = std::numeric_limits<double>::infinity();
  std::optional<CheckSample> worst_input;
  std::optional<Counterexample> ce;
  double wall_seconds = 0.0;  // informational; not serialized
};

/// Per-sample streaming hook; setting it forces a single-threaded,
/// in-order sweep.
struct SampleRow {
  const std::string* check;
  long index;
  const CheckSample* sample;
  const SampleEval* eval;
};
using SampleSink = std::function<void(const SampleRow&)>;

std::vector<VerificationReport> run_sweep(const SweepConfig& config,
                                          const SampleSink& sink = {});

bool has_unexpected_failures(const std::vector<VerificationReport>& reports);

/// Coordinate-wise shrink of a failing input: bisect each coordinate
/// toward the anchor while the predicate keeps failing; a coordinate is
/// only updated when it moves by at least the shrink step, which makes
/// the operation exactly idempotent.
std::vector<double> shrink(std::vector<double> x, const std::vector<double>& anchor,
                           const std::function<bool(const std::vector<double>&)>& fails);

}  // namespace cauchyiso
