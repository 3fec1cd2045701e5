#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "tetracode/gf2.hpp"
#include "tetracode/z_decoder.hpp"

namespace tetracode {

const char* error_type_name(PauliType t) noexcept;  // "x" or "z"
PauliType parse_error_type(std::string_view text);

struct NoiseModel {
  PauliType error_type = PauliType::X;
  double p = 0.0;

  void validate() const;
};

struct RunStats {
  int distance = 0;
  std::size_t n_qubits = 0;
  double beta = 0.0;
  PauliType error_type = PauliType::X;
  double p = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::uint64_t heralded_failures = 0;
  double p_fail = 0.0;
  double std_err = 0.0;
  std::uint64_t seed = 0;
  double wall_time = 0.0;  // seconds; not part of the CSV
};

/// Standard deviation of the mean for a failure fraction over n trials.
double standard_error(double p_fail, std::uint64_t trials);

/// Seed of the random stream for one trial, a pure function of both inputs.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_index) noexcept;

/// Each qubit is included independently with probability p.
Chain sample_iid_error(std::size_t n, const NoiseModel& model, std::mt19937_64& rng);

/// True for heralded failures and for residuals that are non-trivial logicals.
/// Uses the parity shortcut (both logicals act on every qubit); when an
/// oracle is given, the shortcut is cross-checked and a mismatch throws.
bool logical_failure(const TetrahedralCode& code, const Chain& error, const DecodeOutcome& outcome, PauliType type,
                     const StabilizerOracle* oracle = nullptr);

struct SimConfig {
  LiftConfig lift;
  ZConfig z;
  unsigned workers = 1;
  bool heralded_as_failure = true;
  /// Cross-check failure adjudication and syndrome round-trips on every trial.
  bool verify = false;
};

/// Decoders for one code, shared read-only by all workers.
class Simulator {
 public:
  Simulator(const TetrahedralCode& code, SimConfig cfg = {});

  RunStats run(const NoiseModel& model, std::uint64_t trials, std::uint64_t seed) const;

  const TetrahedralCode& code() const noexcept { return *code_; }
  const SimConfig& config() const noexcept { return cfg_; }

 private:
  struct Tally {
    std::uint64_t failures = 0;
    std::uint64_t heralded = 0;
  };
  Tally run_range(const NoiseModel& model, std::uint64_t seed, std::uint64_t begin, std::uint64_t end) const;

  const TetrahedralCode* code_;
  SimConfig cfg_;
  double beta_;
  XDecoder x_;
  ZDecoder z_;
  std::unique_ptr<StabilizerOracle> oracle_;
};

RunStats run_trials(const TetrahedralCode& code, const NoiseModel& model, std::uint64_t trials, std::uint64_t seed,
                    const SimConfig& cfg = {});

/// One row per (code, p), codes in the given order.
std::vector<RunStats> sweep_probabilities(const std::vector<const TetrahedralCode*>& codes, PauliType type,
                                          const std::vector<double>& ps, std::uint64_t trials, std::uint64_t seed,
                                          const SimConfig& cfg = {});

/// n points from lo to hi, geometric when `log_spaced`.
std::vector<double> probability_grid(double lo, double hi, int n, bool log_spaced);

struct CrossingEstimate {
  bool found = false;
  double p = 0.0;     // interpolated crossing
  double low = 0.0;   // interval from the std_err band
  double high = 0.0;
  bool clamped = false;  // a bound hit the end of the grid
};

/// Crossing of two curves sharing a p grid, interpolated linearly in log p.
/// Among several sign changes, the one with the largest significance wins.
CrossingEstimate estimate_crossing(const std::vector<RunStats>& a, const std::vector<RunStats>& b);

std::string format_probability(double x);
std::string csv_header();
std::string csv_row(const RunStats& s);

}  // namespace tetracode
