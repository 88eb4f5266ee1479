#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "quasiclust/dendrogram.hpp"
#include "quasiclust/network.hpp"

namespace quasiclust {

/// Outcome of one randomized property suite.
struct SuiteResult {
  std::string name;
  int trials = 0;
  int passed = 0;
  std::vector<std::string> failures;  // first few witnesses

  bool ok() const { return passed == trials && failures.empty(); }
};

std::vector<std::string> default_labels(int n);

/// Random valid network on n nodes. Entries mix a small discrete set
/// with a continuous range so ties actually occur; `inf_prob` controls
/// the share of missing (+inf) pairs.
Network random_network(std::mt19937_64& rng, int n, double inf_prob = 0.0);

/// Relabels nodes: node i becomes node perm[i].
Network permute_network(const Network& net, const std::vector<int>& perm);

/// Random valid quasi-dendrogram built by evolving a nested sequence of
/// quasi-partitions (not derived from any quasi-ultrametric).
QuasiDendrogram random_dendrogram(std::mt19937_64& rng, int n);

// Each suite is deterministic in (seed, trials).
SuiteResult suite_axiom_a1(std::uint64_t seed, int trials);
SuiteResult suite_axiom_a2(std::uint64_t seed, int trials);
SuiteResult suite_oracle_equivalence(std::uint64_t seed, int trials);
SuiteResult suite_fixed_point(std::uint64_t seed, int trials);
SuiteResult suite_ultrametric_round_trip(std::uint64_t seed, int trials);
SuiteResult suite_dendrogram_round_trip(std::uint64_t seed, int trials);
SuiteResult suite_stability(std::uint64_t seed, int trials);
SuiteResult suite_scc_cross_check(std::uint64_t seed, int trials);
SuiteResult suite_scale_invariance(std::uint64_t seed, int trials);
SuiteResult suite_permutation_invariance(std::uint64_t seed, int trials);
SuiteResult suite_closure_invariance(std::uint64_t seed, int trials);
SuiteResult suite_metric_axioms(std::uint64_t seed, int trials);

std::vector<SuiteResult> run_all_suites(std::uint64_t seed, int trials);

}  // namespace quasiclust
