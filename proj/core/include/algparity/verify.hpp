#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "algparity/serialize.hpp"

namespace algparity {

// Seeded property suites over randomly generated instances. Every trial
// derives its own seed from (master seed, suite, trial index), serializes its
// instance and then checks the serialized form, so a failure entry carries
// everything needed to re-run it.
struct SuiteOptions {
  std::uint64_t seed = 1;
  std::optional<std::size_t> trials;     // suite default when unset
  std::optional<Integer> p;              // restricts the prime where the suite draws one
  std::optional<std::size_t> max_rank;
  std::optional<unsigned long> max_n;
  unsigned jobs = 1;
};

struct TrialOutcome {
  bool pass = false;
  Json detail;  // both sides of every identity checked
};

struct TrialFailure {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Json instance;
  Json detail;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  Json parameters;
  GenStats generation;
  std::vector<TrialFailure> failures;
  double wall_seconds = 0;  // excluded from to_json unless asked for

  bool pass() const { return failures.empty(); }
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
std::size_t default_trials(const std::string& suite);

// Throws InvalidInstance for an unknown suite name.
VerifyReport run_suite(const std::string& suite, const SuiteOptions& options);

// Checks one serialized instance as the named suite would.
TrialOutcome check_instance(const std::string& suite, const Json& instance);

// Draws the instance of a given trial, exactly as run_suite does.
Json generate_instance(const std::string& suite, const SuiteOptions& options, std::size_t trial,
                       GenStats* stats = nullptr);

Json to_json(const VerifyReport& report, bool include_timing = false);
Json to_json(const TrialFailure& failure);
// Accepts a full report (re-runs each embedded failure) or a single failure
// entry; the result lists the re-run outcomes that still fail, in the same
// layout, so a faithful replay reproduces the failures array exactly.
VerifyReport replay(const Json& failure_file);

}  // namespace algparity
