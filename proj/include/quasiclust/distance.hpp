#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "quasiclust/network.hpp"

namespace quasiclust {

/// A relation between two node sets whose projections cover both sides.
struct Correspondence {
  std::vector<std::pair<int, int>> pairs;

  /// Throws NotACorrespondenceError naming the first uncovered node.
  void validate(int nx, int ny) const;
};

/// Largest absolute discrepancy between matched dissimilarities:
/// max over (x,y),(x',y') in r of |A_X(x,x') - A_Y(y,y')|. Two +inf
/// entries are treated as equal; +inf against a finite value is +inf.
double distortion(const Network& net_x, const Network& net_y, const Correspondence& r);

/// Half the minimum distortion over all correspondences, found by
/// exhaustive enumeration over subsets of X x Y. `cell_cap` bounds
/// |X|*|Y| (enumeration is 2^cells); SizeCapExceededError past it.
double network_distance_exact(const Network& net_x, const Network& net_y, int cell_cap = 16);

/// Heuristic upper bound: best distortion/2 over the full product
/// correspondence, the identity matching (when sizes agree), and
/// `tries` random matchings. Never below the exact distance.
double network_distance_upper(const Network& net_x, const Network& net_y, int tries = 64,
                              std::uint64_t seed = 0);

struct StabilityCheckResult {
  bool pass = false;
  double output_distance = 0.0;  // distance between the DSL outputs
  double input_distance = 0.0;   // distance between the inputs
};

/// Verifies that applying directed single linkage cannot move two
/// networks further apart: d(dsl(X), dsl(Y)) <= d(X, Y), both sides by
/// exact enumeration.
StabilityCheckResult stability_check(const Network& net_x, const Network& net_y,
                                     int cell_cap = 16);

/// Exhaustive bijection search; networks must have equal sizes to be
/// isomorphic.
bool isomorphic(const Network& net_x, const Network& net_y);

struct MetricAxiomReport {
  int networks = 0;
  int pair_checks = 0;
  int triangle_checks = 0;
  std::vector<std::string> failures;

  bool pass() const { return failures.empty(); }
};

/// Checks symmetry, non-negativity, identity of indiscernibles up to
/// isomorphism, and the triangle inequality over every pair/triple of
/// the given networks, all with the exact distance.
MetricAxiomReport metric_axiom_suite(const std::vector<Network>& nets, int cell_cap = 16);

}  // namespace quasiclust
