#include "quasiclust/suites.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "quasiclust/dioid.hpp"
#include "quasiclust/distance.hpp"

namespace quasiclust {

namespace {

constexpr size_t kMaxFailures = 5;

void record_failure(SuiteResult& result, const std::string& detail) {
  if (result.failures.size() < kMaxFailures) result.failures.push_back(detail);
}

// Runs `trial` `trials` times; a trial passes by returning nullopt.
template <typename Trial>
SuiteResult run_suite(std::string name, std::uint64_t seed, int trials, Trial&& trial) {
  SuiteResult result;
  result.name = std::move(name);
  result.trials = trials;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::optional<std::string> failure = trial(rng, t);
    if (!failure)
      ++result.passed;
    else
      record_failure(result, "trial " + std::to_string(t) + ": " + *failure);
  }
  return result;
}

double random_entry(std::mt19937_64& rng) {
  // Half the mass on a four-value grid forces ties; the rest is
  // continuous and bounded away from zero.
  if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < 0.5)
    return static_cast<double>(std::uniform_int_distribution<int>(1, 4)(rng));
  return std::uniform_real_distribution<double>(0.05, 10.0)(rng);
}

}  // namespace

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = "v" + std::to_string(i);
  return labels;
}

Network random_network(std::mt19937_64& rng, int n, double inf_prob) {
  SquareMatrix m(n);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      m(i, j) = (inf_prob > 0.0 && coin(rng) < inf_prob) ? kInf : random_entry(rng);
    }
  return Network(default_labels(n), std::move(m));
}

Network permute_network(const Network& net, const std::vector<int>& perm) {
  const int n = net.size();
  std::vector<std::string> labels(n);
  SquareMatrix m(n);
  for (int i = 0; i < n; ++i) {
    labels[perm[i]] = net.labels()[i];
    for (int j = 0; j < n; ++j) m(perm[i], perm[j]) = net.at(i, j);
  }
  return Network(std::move(labels), std::move(m));
}

// ---------------------------------------------------------------------------
// Random quasi-dendrograms

namespace {

struct GenState {
  std::vector<std::vector<int>> blocks;
  std::set<std::pair<int, int>> edges;
};

// Transitive closure; nullopt when it would break unidirectionality.
std::optional<std::set<std::pair<int, int>>> close_edges(std::set<std::pair<int, int>> edges) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [a, m] : std::set<std::pair<int, int>>(edges))
      for (const auto& [m2, c] : std::set<std::pair<int, int>>(edges))
        if (m2 == m && a != c && !edges.count({a, c})) {
          edges.insert({a, c});
          changed = true;
        }
  }
  for (const auto& [a, b] : edges)
    if (a == b || edges.count({b, a})) return std::nullopt;
  return edges;
}

// Merges the given block indices; remaps and closes the edge set.
std::optional<GenState> try_merge(const GenState& st, std::vector<int> group) {
  std::sort(group.begin(), group.end());
  GenState out;
  std::vector<int> new_index(st.blocks.size());
  std::vector<int> merged;
  for (int g : group) {
    const auto& b = st.blocks[g];
    merged.insert(merged.end(), b.begin(), b.end());
  }
  std::sort(merged.begin(), merged.end());
  for (int b = 0; b < static_cast<int>(st.blocks.size()); ++b) {
    if (std::binary_search(group.begin(), group.end(), b)) continue;
    new_index[b] = static_cast<int>(out.blocks.size());
    out.blocks.push_back(st.blocks[b]);
  }
  const int merged_index = static_cast<int>(out.blocks.size());
  for (int g : group) new_index[g] = merged_index;
  out.blocks.push_back(std::move(merged));

  std::set<std::pair<int, int>> remapped;
  for (const auto& [a, b] : st.edges) {
    const int a2 = new_index[a];
    const int b2 = new_index[b];
    if (a2 != b2) remapped.insert({a2, b2});
  }
  auto closed = close_edges(std::move(remapped));
  if (!closed) return std::nullopt;
  out.edges = std::move(*closed);
  return out;
}

std::optional<GenState> try_add_edge(const GenState& st, int from, int to) {
  if (st.edges.count({from, to}) || st.edges.count({to, from})) return std::nullopt;
  auto edges = st.edges;
  edges.insert({from, to});
  auto closed = close_edges(std::move(edges));
  if (!closed) return std::nullopt;
  GenState out = st;
  out.edges = std::move(*closed);
  return out;
}

// Merging two incomparable blocks never breaks unidirectionality, and
// neither does merging the endpoints of a non-redundant edge; one of
// the two always exists while more than one block remains.
GenState safe_merge(const GenState& st) {
  const int b = static_cast<int>(st.blocks.size());
  for (int i = 0; i < b; ++i)
    for (int j = i + 1; j < b; ++j)
      if (!st.edges.count({i, j}) && !st.edges.count({j, i}))
        if (auto next = try_merge(st, {i, j})) return *next;
  for (const auto& [from, to] : st.edges) {
    bool redundant = false;
    for (const auto& [a, m] : st.edges)
      if (a == from && m != to && st.edges.count({m, to})) redundant = true;
    if (!redundant)
      if (auto next = try_merge(st, {from, to})) return *next;
  }
  throw Error("internal: no admissible merge found");
}

QuasiPartition to_partition(int n, const GenState& st) {
  return QuasiPartition(n, st.blocks, st.edges);
}

}  // namespace

QuasiDendrogram random_dendrogram(std::mt19937_64& rng, int n) {
  GenState st;
  for (int i = 0; i < n; ++i) st.blocks.push_back({i});
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> tick(1, 8);

  std::vector<std::pair<double, QuasiPartition>> cuts;
  double delta = 0.0;
  const bool end_connected = coin(rng) < 0.8;
  while (static_cast<int>(st.blocks.size()) > 1) {
    if (!end_connected && !cuts.empty() && coin(rng) < 0.25) break;
    delta += tick(rng) * 0.25;  // quarter steps stay exact in binary

    auto random_action = [&](const GenState& from_state) -> std::optional<GenState> {
      const int blocks = static_cast<int>(from_state.blocks.size());
      if (blocks < 2) return std::nullopt;
      std::uniform_int_distribution<int> pick(0, blocks - 1);
      for (int attempt = 0; attempt < 6; ++attempt) {
        if (coin(rng) < 0.45) {
          int i = pick(rng);
          int j = pick(rng);
          if (i == j) continue;
          std::vector<int> group{i, j};
          if (blocks >= 3 && coin(rng) < 0.2) {
            const int k = pick(rng);
            if (k != i && k != j) group.push_back(k);
          }
          if (auto next = try_merge(from_state, std::move(group))) return next;
        } else {
          const int from = pick(rng);
          const int to = pick(rng);
          if (from == to) continue;
          if (auto next = try_add_edge(from_state, from, to)) return next;
        }
      }
      return std::nullopt;
    };

    std::optional<GenState> next = random_action(st);
    if (!next) next = safe_merge(st);
    // Sometimes stack a second change at the same resolution, so event
    // groups with several merges or merge+edge mixes get exercised.
    if (coin(rng) < 0.35)
      if (auto more = random_action(*next)) next = std::move(more);
    st = std::move(*next);
    cuts.emplace_back(delta, to_partition(n, st));
  }
  return dendrogram_from_cuts(default_labels(n), cuts);
}

// ---------------------------------------------------------------------------
// Suites

SuiteResult suite_axiom_a1(std::uint64_t seed, int trials) {
  return run_suite("axiom-a1", seed, trials, [](std::mt19937_64& rng, int) {
    const Network net = random_network(rng, 2);
    const QuasiUltrametric u = dsl(net);
    if (u.network() == net) return std::optional<std::string>{};
    return std::optional<std::string>{"dsl changed a two-node network"};
  });
}

SuiteResult suite_axiom_a2(std::uint64_t seed, int trials) {
  return run_suite("axiom-a2", seed, trials, [](std::mt19937_64& rng, int t) -> std::optional<std::string> {
    std::uniform_int_distribution<int> size(3, 6);
    const int n = size(rng);
    const Network net_x = random_network(rng, n);
    if (t % 2 == 0) {
      // Entry reduction under the identity map.
      std::uniform_real_distribution<double> shrink(0.3, 1.0);
      SquareMatrix reduced(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) reduced(i, j) = net_x.at(i, j) * shrink(rng);
      const Network net_y(net_x.labels(), std::move(reduced));
      std::vector<int> phi(n);
      std::iota(phi.begin(), phi.end(), 0);
      if (!axiom_a2_check(net_x, net_y, phi).pass) return "entry reduction raised a chain cost";
      return std::nullopt;
    }
    // Quotient onto two blocks, mapped to the cheapest cross links.
    std::uniform_int_distribution<int> side(0, 1);
    std::vector<int> phi(n);
    phi[0] = 0;
    phi[1] = 1;
    for (int i = 2; i < n; ++i) phi[i] = side(rng);
    double ab = kInf;
    double ba = kInf;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (phi[i] == 0 && phi[j] == 1) ab = std::min(ab, net_x.at(i, j));
        if (phi[i] == 1 && phi[j] == 0) ba = std::min(ba, net_x.at(i, j));
      }
    SquareMatrix q(2);
    q(0, 1) = ab;
    q(1, 0) = ba;
    const Network net_y({"a", "b"}, std::move(q));
    if (!axiom_a2_check(net_x, net_y, phi).pass) return "quotient map raised a chain cost";
    return std::nullopt;
  });
}

SuiteResult suite_oracle_equivalence(std::uint64_t seed, int trials) {
  return run_suite("oracle-equivalence", seed, trials,
                   [](std::mt19937_64& rng, int t) -> std::optional<std::string> {
    std::uniform_int_distribution<int> size(2, 7);
    const int n = size(rng);
    const Network net = random_network(rng, n, t % 3 == 0 ? 0.15 : 0.0);
    const QuasiUltrametric u = dsl(net);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double expected = chain_cost_oracle(net, i, j);
        if (u.at(i, j) != expected) {
          std::ostringstream msg;
          msg << "dsl(" << i << "," << j << ")=" << format_value(u.at(i, j)) << " oracle="
              << format_value(expected);
          return msg.str();
        }
      }
    return std::nullopt;
  });
}

SuiteResult suite_fixed_point(std::uint64_t seed, int trials) {
  return run_suite("fixed-point", seed, trials,
                   [](std::mt19937_64& rng, int t) -> std::optional<std::string> {
    std::uniform_int_distribution<int> size(2, 7);
    Network net = random_network(rng, size(rng), t % 4 == 0 ? 0.2 : 0.0);
    if (t % 2 == 0) net = dsl(net).network();  // exercise both sides of the iff
    const bool fixed = dioid_product(net.dissim(), net.dissim()) == net.dissim();
    const bool certified = !QuasiUltrametric::violation(net).has_value();
    if (fixed != certified)
      return std::string("dioid square fixed point disagrees with certification (fixed=") +
             (fixed ? "yes" : "no") + ")";
    return std::nullopt;
  });
}

SuiteResult suite_ultrametric_round_trip(std::uint64_t seed, int trials) {
  return run_suite("ultrametric-round-trip", seed, trials,
                   [](std::mt19937_64& rng, int t) -> std::optional<std::string> {
    std::uniform_int_distribution<int> size(1, 8);
    const Network net = random_network(rng, size(rng), t % 3 == 0 ? 0.25 : 0.0);
    const QuasiUltrametric u = dsl(net);
    const QuasiDendrogram d = upsilon(u);
    if (!(psi(d) == u)) return "psi(upsilon(u)) differs from u";
    if (!(upsilon(psi(d)) == d)) return "upsilon(psi(d)) differs from d";
    return std::nullopt;
  });
}

SuiteResult suite_dendrogram_round_trip(std::uint64_t seed, int trials) {
  return run_suite("dendrogram-round-trip", seed, trials,
                   [](std::mt19937_64& rng, int) -> std::optional<std::string> {
    std::uniform_int_distribution<int> size(2, 8);
    const QuasiDendrogram d = random_dendrogram(rng, size(rng));
    const QuasiUltrametric u = psi(d);
    if (!(upsilon(u) == d)) return "upsilon(psi(d)) differs from d";
    if (!(psi(upsilon(u)) == u)) return "psi(upsilon(u)) differs from u";
    return std::nullopt;
  });
}

SuiteResult suite_stability(std::uint64_t seed, int trials) {
  return run_suite("stability", seed, trials,
                   [](std::mt19937_64& rng, int t) -> std::optional<std::string> {
    const Network net_x = random_network(rng, 3);
    Network net_y = [&] {
      if (t % 2 == 0) return random_network(rng, 3);
      std::uniform_real_distribution<double> eps(0.0, 0.5);
      SquareMatrix m = net_x.dissim();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          if (i != j) m(i, j) += eps(rng);
      return Network(net_x.labels(), std::move(m));
    }();
    const auto result = stability_check(net_x, net_y);
    if (!result.pass) {
      std::ostringstream msg;
      msg << "output distance " << format_value(result.output_distance)
          << " exceeds input distance " << format_value(result.input_distance);
      return msg.str();
    }
    return std::nullopt;
  });
}

// Independent route for the cut structure: strongly connected
// components of the threshold digraph and the transitive closure of its
// condensation, via Tarjan's algorithm.
namespace {

struct TarjanScc {
  const std::vector<std::vector<int>>& adj;
  std::vector<int> index, low, comp;
  std::vector<char> on_stack;
  std::vector<int> stack;
  int counter = 0;
  int comps = 0;

  explicit TarjanScc(const std::vector<std::vector<int>>& adjacency)
      : adj(adjacency),
        index(adjacency.size(), -1),
        low(adjacency.size(), 0),
        comp(adjacency.size(), -1),
        on_stack(adjacency.size(), 0) {
    for (size_t v = 0; v < adjacency.size(); ++v)
      if (index[v] == -1) visit(static_cast<int>(v));
  }

  void visit(int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (int w : adj[v]) {
      if (index[w] == -1) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        const int w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp[w] = comps;
        if (w == v) break;
      }
      ++comps;
    }
  }
};

}  // namespace

SuiteResult suite_scc_cross_check(std::uint64_t seed, int trials) {
  return run_suite("scc-cross-check", seed, trials,
                   [](std::mt19937_64& rng, int t) -> std::optional<std::string> {
    std::uniform_int_distribution<int> size(2, 8);
    const int n = size(rng);
    const QuasiUltrametric u = dsl(random_network(rng, n, t % 3 == 0 ? 0.2 : 0.0));

    std::vector<double> values{0.0};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && u.at(i, j) < kInf) {
          values.push_back(u.at(i, j));
          values.push_back(u.at(i, j) + 0.125);
        }
    const double delta = values[std::uniform_int_distribution<size_t>(0, values.size() - 1)(rng)];

    const QuasiPartition cut = cut_at(u, delta);

    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && u.at(i, j) <= delta) adj[i].push_back(j);
    TarjanScc scc(adj);

    // Components, canonicalized the same way cut blocks are.
    std::map<int, std::vector<int>> by_comp;
    for (int i = 0; i < n; ++i) by_comp[scc.comp[i]].push_back(i);
    std::vector<std::vector<int>> expected_blocks;
    for (auto& [comp, members] : by_comp) {
      std::sort(members.begin(), members.end());
      expected_blocks.push_back(members);
    }
    std::sort(expected_blocks.begin(), expected_blocks.end());
    if (expected_blocks != cut.blocks()) return "blocks differ from strongly connected components";

    // Condensation edges, transitively closed, in cut block indexing.
    std::vector<int> block_of_comp(scc.comps, -1);
    for (int i = 0; i < n; ++i) block_of_comp[scc.comp[i]] = cut.block_of(i);
    std::set<std::pair<int, int>> closure;
    for (int i = 0; i < n; ++i)
      for (int j : adj[i])
        if (scc.comp[i] != scc.comp[j])
          closure.insert({block_of_comp[scc.comp[i]], block_of_comp[scc.comp[j]]});
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [a, m] : std::set<std::pair<int, int>>(closure))
        for (const auto& [m2, c] : std::set<std::pair<int, int>>(closure))
          if (m2 == m && a != c && closure.insert({a, c}).second) changed = true;
    }
    if (closure != cut.edges()) return "edges differ from the closed condensation";
    return std::nullopt;
  });
}

SuiteResult suite_scale_invariance(std::uint64_t seed, int trials) {
  return run_suite("scale-invariance", seed, trials,
                   [](std::mt19937_64& rng, int t) -> std::optional<std::string> {
    static const std::vector<std::string> specs{"2x", "x^2", "x+x^3"};
    const ScaleMap psi_map = ScaleMap::parse(specs[t % specs.size()]);
    std::uniform_int_distribution<int> size(2, 7);
    const Network net = random_network(rng, size(rng), t % 4 == 0 ? 0.2 : 0.0);
    const Network lhs = dsl(scale_transform(net, psi_map)).network();
    const Network rhs = scale_transform(dsl(net).network(), psi_map);
    if (!(lhs == rhs)) return "dsl does not commute with " + specs[t % specs.size()];
    return std::nullopt;
  });
}

SuiteResult suite_permutation_invariance(std::uint64_t seed, int trials) {
  return run_suite("permutation-invariance", seed, trials,
                   [](std::mt19937_64& rng, int t) -> std::optional<std::string> {
    std::uniform_int_distribution<int> size(2, 7);
    const int n = size(rng);
    const Network net = random_network(rng, n, t % 4 == 0 ? 0.2 : 0.0);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Network lhs = dsl(permute_network(net, perm)).network();
    const Network rhs = permute_network(dsl(net).network(), perm);
    if (!(lhs == rhs)) return "dsl does not commute with relabeling";
    return std::nullopt;
  });
}

SuiteResult suite_closure_invariance(std::uint64_t seed, int trials) {
  return run_suite("closure-invariance", seed, trials,
                   [](std::mt19937_64& rng, int t) -> std::optional<std::string> {
    std::uniform_int_distribution<int> size(2, 7);
    const Network net = random_network(rng, size(rng), t % 4 == 0 ? 0.2 : 0.0);
    if (!(dsl(metric_closure(net)) == dsl(net)))
      return "dsl of the metric closure differs from dsl of the input";
    return std::nullopt;
  });
}

SuiteResult suite_metric_axioms(std::uint64_t seed, int trials) {
  return run_suite("metric-axioms", seed, trials,
                   [](std::mt19937_64& rng, int t) -> std::optional<std::string> {
    std::uniform_int_distribution<int> size(2, 3);
    std::vector<Network> nets;
    for (int i = 0; i < 3; ++i) nets.push_back(random_network(rng, size(rng)));
    if (t % 2 == 0) {
      // Replace one member by a relabeled copy of another: distance 0.
      const int n = nets[0].size();
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      nets[1] = permute_network(nets[0], perm);
    }
    const auto report = metric_axiom_suite(nets);
    if (!report.pass()) return report.failures.front();
    return std::nullopt;
  });
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed, int trials) {
  std::vector<SuiteResult> results;
  results.push_back(suite_axiom_a1(seed + 1, trials));
  results.push_back(suite_axiom_a2(seed + 2, trials));
  results.push_back(suite_oracle_equivalence(seed + 3, trials));
  results.push_back(suite_fixed_point(seed + 4, trials));
  results.push_back(suite_ultrametric_round_trip(seed + 5, trials));
  results.push_back(suite_dendrogram_round_trip(seed + 6, trials));
  results.push_back(suite_stability(seed + 7, trials));
  results.push_back(suite_scc_cross_check(seed + 8, trials));
  results.push_back(suite_scale_invariance(seed + 9, trials));
  results.push_back(suite_permutation_invariance(seed + 10, trials));
  results.push_back(suite_closure_invariance(seed + 11, trials));
  results.push_back(suite_metric_axioms(seed + 12, trials));
  return results;
}

}  // namespace quasiclust
