#include "quasiclust/dioid.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <string>

namespace quasiclust {

SquareMatrix dioid_product(const SquareMatrix& a, const SquareMatrix& b) {
  const int n = a.size();
  if (b.size() != n)
    throw DimensionMismatchError("dioid_product: sizes " + std::to_string(n) + " vs " +
                                 std::to_string(b.size()));
  SquareMatrix out(n, kInf);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      for (int j = 0; j < n; ++j) {
        const double v = std::max(aik, b(k, j));
        if (v < out(i, j)) out(i, j) = v;
      }
    }
  }
  return out;
}

SquareMatrix dioid_power(const SquareMatrix& a, int k) {
  if (k < 1) throw Error("dioid_power requires k >= 1");
  SquareMatrix base = a;
  SquareMatrix result;
  bool have_result = false;
  while (k > 0) {
    if (k & 1) {
      result = have_result ? dioid_product(result, base) : base;
      have_result = true;
    }
    k >>= 1;
    if (k > 0) base = dioid_product(base, base);
  }
  return result;
}

QuasiUltrametric dsl(const Network& net) {
  SquareMatrix u = net.dissim();
  // Squaring doubles the admissible chain length each round; stop at the
  // first fixed point, which arrives after at most ceil(log2(n-1)) rounds.
  while (true) {
    SquareMatrix next = dioid_product(u, u);
    if (next == u) break;
    u = std::move(next);
  }
  return QuasiUltrametric::certify(Network(net.labels(), std::move(u)));
}

int default_oracle_cap() {
  if (const char* env = std::getenv("QUASICLUST_ORACLE_CAP")) {
    int value = 0;
    const char* end = env + std::string_view(env).size();
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc{} && ptr == end && value >= 1) return value;
  }
  return 8;
}

namespace {

double best_chain(const SquareMatrix& a, std::vector<char>& visited, int from, int target,
                  double cost_so_far, double best) {
  // Chains through a +inf link cost +inf; only finite links can beat
  // the running best, so infinite edges are never expanded.
  const int n = a.size();
  for (int next = 0; next < n; ++next) {
    if (visited[next]) continue;
    const double link = a(from, next);
    if (link == kInf) continue;
    const double cost = std::max(cost_so_far, link);
    if (cost >= best) continue;
    if (next == target) {
      best = cost;
      continue;
    }
    visited[next] = 1;
    best = best_chain(a, visited, next, target, cost, best);
    visited[next] = 0;
  }
  return best;
}

}  // namespace

double chain_cost_oracle(const Network& net, int i, int j, int cap) {
  if (net.size() > cap) throw OracleSizeExceededError(net.size(), cap);
  if (i < 0 || i >= net.size() || j < 0 || j >= net.size())
    throw Error("chain_cost_oracle: node index out of range");
  if (i == j) return 0.0;  // the chain [x, x] has null cost
  std::vector<char> visited(net.size(), 0);
  visited[i] = 1;
  return best_chain(net.dissim(), visited, i, j, 0.0, kInf);
}

A2CheckResult axiom_a2_check(const Network& net_x, const Network& net_y,
                             const std::vector<int>& phi) {
  const int nx = net_x.size();
  const int ny = net_y.size();
  if (static_cast<int>(phi.size()) != nx)
    throw DimensionMismatchError("phi must map every node of the first network");
  for (int v : phi)
    if (v < 0 || v >= ny) throw Error("phi maps outside the target node set");
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j)
      if (net_x.at(i, j) < net_y.at(phi[i], phi[j]))
        throw NotDissimilarityReducingError(i, j, net_x.at(i, j), net_y.at(phi[i], phi[j]));

  const QuasiUltrametric ux = dsl(net_x);
  const QuasiUltrametric uy = dsl(net_y);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j)
      if (ux.at(i, j) < uy.at(phi[i], phi[j]))
        return {false, i, j, ux.at(i, j), uy.at(phi[i], phi[j])};
  return {true, -1, -1, 0.0, 0.0};
}

}  // namespace quasiclust
