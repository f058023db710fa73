#pragma once

#include <cstdint>
#include <string>

#include "hylo/coinductive.hpp"

namespace hylo {

struct OracleBudgets {
  std::uint64_t max_candidates = 10'000'000;  // candidate functions per sweep
  std::uint64_t max_instances = 100'000;      // instances per campaign run
};

struct SolutionCount {
  std::uint64_t count = 0;
  std::vector<SolutionTable> solutions;  // retained up to the cap
  bool truncated = false;
};

// Exact solution count by checking every total map A -> B. Candidate index
// i assigns element a the value (i / |B|^a) mod |B|, so indices are stable
// across runs.
SolutionCount enumerate_solutions(const EquationInstance& inst,
                                  std::size_t retain_cap = 16,
                                  const OracleBudgets& budgets = {});

// Count capped at `limit`; used by the probes where only 0/1/many matters.
std::uint64_t count_solutions_capped(const EquationInstance& inst,
                                     std::uint64_t limit);

// Every instance over canonical carriers a0..,b0.. with shapes s0.. of the
// given arities, exactly once, in mixed-radix order (alpha entries first,
// beta entries above them).
class ExhaustiveInstances {
 public:
  ExhaustiveInstances(std::vector<std::size_t> profile, std::size_t size_a,
                      std::size_t size_b, const OracleBudgets& budgets = {});

  std::uint64_t size() const { return total_; }
  EquationInstance at(std::uint64_t index) const;

 private:
  ContainerSpec functor_;
  Carrier a_, b_;
  std::size_t fa_count_ = 0;
  std::uint64_t alpha_choices_ = 0, beta_choices_ = 0, total_ = 0;
};

// Uniform instance from a named deterministic generator: mt19937_64 seeded
// with `seed`, one draw per alpha entry in carrier order, then one per beta
// entry in enumeration order, each reduced modulo the choice count.
EquationInstance random_instance(const std::vector<std::size_t>& profile,
                                 std::size_t size_a, std::size_t size_b,
                                 std::uint64_t seed);

struct ProbeResult {
  bool verdict = false;
  std::string witness_json;      // instance refuting the sweep, if any
  std::uint64_t witness_count = 0;
};

// Bounded recursiveness check of the coalgebra side: every algebra over
// codomains of size 1..max_b must admit exactly one solution.
ProbeResult probe_recursive(const EquationInstance& inst, std::size_t max_b,
                            const OracleBudgets& budgets = {});

// Bounded corecursiveness check of the algebra side: every coalgebra over
// domains of size 0..max_a must admit exactly one solution.
ProbeResult probe_corecursive(const EquationInstance& inst, std::size_t max_a,
                              const OracleBudgets& budgets = {});

struct CampaignRun {
  enum class Mode { exhaustive, random };
  Mode mode = Mode::exhaustive;
  std::vector<std::size_t> profile;
  std::size_t size_a = 1, size_b = 1;
  std::uint64_t count = 0;  // random mode only
};

struct CampaignConfig {
  std::vector<CampaignRun> runs;
  std::uint64_t seed = 0;
  std::size_t probe_max_b = 2;
  std::size_t dom_indep_samples = 10;
  std::size_t max_failures_kept = 25;
  OracleBudgets budgets;
};

struct PropertyTally {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t passed = 0;
};

struct CampaignFailure {
  std::string property;
  std::string instance_json;
  std::string detail;
};

struct CampaignReport {
  std::uint64_t seed = 0;
  std::uint64_t instances_run = 0;
  std::vector<PropertyTally> tallies;
  std::vector<CampaignFailure> failures;
  std::uint64_t failures_total = 0;

  // Recorded as data, not as pass/fail: instances where bisimilarity is
  // strictly coarser than the cograph identification, and instances with a
  // unique solution that neither criterion certifies.
  std::uint64_t bisim_beyond_equiv = 0;
  std::string first_bisim_beyond_equiv_json;
  std::uint64_t unique_without_criterion = 0;
  std::string first_unique_without_criterion_json;

  bool all_passed() const { return failures_total == 0; }
  std::string to_json() const;
};

// Runs every property on every generated instance; see CampaignReport for
// what is tallied. Identical config and seed produce a byte-identical
// report.
CampaignReport run_campaign(const CampaignConfig& config);

CampaignConfig campaign_config_from_json(const std::string& text);

}  // namespace hylo
