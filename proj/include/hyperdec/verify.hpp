#pragma once

#include "hyperdec/identities.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hyperdec {

enum class Mode { Exact, Numeric, Both };
const char* mode_name(Mode mode);

struct TrialConfig {
  std::uint64_t seed = 42;
  int trials = 5;
  int degree = 12;  // capped at 8 for instances with three or more variables
  Mode mode = Mode::Exact;
  double tol = 1e-10;
  std::vector<std::string> id_patterns;  // glob patterns; empty selects all
};

struct IdentityOutcome {
  std::string id;
  int trials = 0;
  int skipped = 0;
  bool pass = true;
  std::string max_discrepancy = "0";     // exact coefficient gap, as a rational
  double max_numeric_discrepancy = 0.0;  // worst relative gap over points
  std::vector<std::string> errata;
  std::string detail;  // first failure pinpoint (id, trial, index, both sides)
};

struct SuiteResult {
  TrialConfig config;
  std::vector<IdentityOutcome> identities;  // sorted by id
  int total_trials = 0;
  int total_skipped = 0;
  bool all_pass = true;
  std::string skip_diagnostic;  // nonempty when the skip policy trips
};

// Deterministic in (record, arity, seed, trial): every slot entry is p/q with
// q in {2,3,5,7}, p in [-9,9], p/q non-integer, so no Pochhammer factor of
// the builders can hit a pole at any degree.
ParamSet random_params(const IdentityRecord& rec, Arity arity,
                       std::uint64_t seed, int trial);

// Arity used for trial number `trial` of a record: multi-variable records
// rotate through their schedule, everything else is one x and one y variable.
Arity arity_for_trial(const IdentityRecord& rec, int trial);

// Working degree for an instance: three-plus-variable instances cap at 8.
int degree_for(Arity arity, int degree);

// Fixed in-domain evaluation points for numeric verification of a record.
std::vector<std::vector<double>> numeric_points(const IdentityRecord& rec,
                                                Arity arity);

// Shell-style glob with * and ?.
bool glob_match(const std::string& pattern, const std::string& text);

SuiteResult run_suite(const TrialConfig& cfg);

// Marks the suite failed when more than 10% of instances were skipped;
// returns the diagnostic (empty when the policy holds).
std::string apply_skip_policy(SuiteResult& suite);

// Timestamp-free serialization of the suite; byte-identical across runs with
// the same config. Callers stamp wall-clock time at write time if they wish.
std::string report_json(const SuiteResult& suite);

// Small deterministic RNG primitives, exposed for tests.
std::uint64_t splitmix64_next(std::uint64_t& state);
std::uint64_t fnv1a64(const std::string& text);

}  // namespace hyperdec
