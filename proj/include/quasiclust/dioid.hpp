#pragma once

#include <vector>

#include "quasiclust/network.hpp"

namespace quasiclust {

/// Matrix product in the (min, max) dioid over [0, +inf]:
/// out(i,j) = min over k of max(a(i,k), b(k,j)).
/// min and max are exact on doubles, so the kernel introduces no rounding.
SquareMatrix dioid_product(const SquareMatrix& a, const SquareMatrix& b);

/// k-th dioid power (k >= 1) by binary exponentiation. Powers of a
/// zero-diagonal matrix are entrywise nonincreasing in k and stabilize
/// no later than k = n-1.
SquareMatrix dioid_power(const SquareMatrix& a, int k);

/// Directed single linkage: the minimum over chains from i to j of the
/// largest link dissimilarity, equal to the (n-1)st dioid power of the
/// dissimilarity matrix. Computed by repeated squaring with an early
/// exit at the first fixed point; the result is certified before return.
QuasiUltrametric dsl(const Network& net);

/// Cap for the brute-force oracle, default 8; the environment variable
/// QUASICLUST_ORACLE_CAP overrides it.
int default_oracle_cap();

/// Exhaustive minimum-of-maximum over all simple chains from i to j.
/// Independent of the dioid path: plain depth-first enumeration.
/// Simple chains suffice: deleting a cycle from a chain never increases
/// its maximum link. Throws OracleSizeExceededError past the cap.
double chain_cost_oracle(const Network& net, int i, int j, int cap = default_oracle_cap());

struct A2CheckResult {
  bool pass = false;
  // witness pair in X when pass is false
  int x = -1;
  int x_prime = -1;
  double u_x = 0.0;
  double u_y = 0.0;
};

/// Verifies u_X(x,x') >= u_Y(phi(x),phi(x')) for all pairs, where both
/// sides are DSL outputs. `phi` maps X node indices to Y node indices
/// and must be dissimilarity-reducing on the inputs; otherwise
/// NotDissimilarityReducingError identifies the offending pair.
A2CheckResult axiom_a2_check(const Network& net_x, const Network& net_y,
                             const std::vector<int>& phi);

}  // namespace quasiclust
