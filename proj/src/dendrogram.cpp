#include "quasiclust/dendrogram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace quasiclust {

// ---------------------------------------------------------------------------
// QuasiEquivalence

QuasiEquivalence::QuasiEquivalence(int n, std::vector<char> rel)
    : n_(n), rel_(std::move(rel)) {
  if (static_cast<int>(rel_.size()) != n * n)
    throw DimensionMismatchError("relation must have n*n entries");
  for (int i = 0; i < n; ++i)
    if (!related(i, i)) throw QuasiEquivalenceError::not_reflexive(i);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!related(i, j)) continue;
      for (int k = 0; k < n; ++k)
        if (related(j, k) && !related(i, k)) throw QuasiEquivalenceError::not_transitive(i, j, k);
    }
}

// ---------------------------------------------------------------------------
// QuasiPartition

QuasiPartition::QuasiPartition(int n, std::vector<std::vector<int>> blocks,
                               std::set<std::pair<int, int>> edges)
    : n_(n), blocks_(std::move(blocks)) {
  if (n_ < 0) throw QuasiPartitionError("negative node count");
  block_of_.assign(n_, -1);
  const int b = static_cast<int>(blocks_.size());
  for (auto& block : blocks_) {
    if (block.empty()) throw QuasiPartitionError("empty block");
    std::sort(block.begin(), block.end());
    for (int node : block) {
      if (node < 0 || node >= n_)
        throw QuasiPartitionError("node " + std::to_string(node) + " out of range");
      if (block_of_[node] != -1)
        throw QuasiPartitionError("node " + std::to_string(node) + " in two blocks");
      block_of_[node] = 1;  // marks coverage; real index assigned after reordering
    }
  }
  for (int node = 0; node < n_; ++node)
    if (block_of_[node] == -1)
      throw QuasiPartitionError("node " + std::to_string(node) + " not covered");

  // Canonical order: ascending smallest member. Remap edge indices along.
  std::vector<int> order(b);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return blocks_[x].front() < blocks_[y].front(); });
  std::vector<int> new_index(b);
  std::vector<std::vector<int>> reordered(b);
  for (int pos = 0; pos < b; ++pos) {
    new_index[order[pos]] = pos;
    reordered[pos] = std::move(blocks_[order[pos]]);
  }
  blocks_ = std::move(reordered);
  for (int pos = 0; pos < b; ++pos)
    for (int node : blocks_[pos]) block_of_[node] = pos;

  for (const auto& [from, to] : edges) {
    if (from < 0 || from >= b || to < 0 || to >= b)
      throw QuasiPartitionError("edge references a missing block");
    edges_.insert({new_index[from], new_index[to]});
  }

  // QP1: no self-loops and at most one direction between two blocks.
  for (const auto& [from, to] : edges_) {
    if (from == to) throw QuasiPartitionError("QP1: self edge on block " + std::to_string(from));
    if (edges_.count({to, from}))
      throw QuasiPartitionError("QP1: edges in both directions between blocks " +
                                std::to_string(from) + " and " + std::to_string(to));
  }
  // QP2: the edge set must be its own transitive closure.
  for (const auto& [from, mid] : edges_)
    for (const auto& [mid2, to] : edges_)
      if (mid2 == mid && !edges_.count({from, to}))
        throw QuasiPartitionError("QP2: missing edge " + std::to_string(from) + "->" +
                                  std::to_string(to) + " implied by " + std::to_string(from) +
                                  "->" + std::to_string(mid) + "->" + std::to_string(to));
}

std::set<std::pair<int, int>> QuasiPartition::reduced_edges() const {
  // In a transitively closed DAG an edge is redundant exactly when some
  // two-step path joins its endpoints.
  std::set<std::pair<int, int>> out;
  for (const auto& [from, to] : edges_) {
    bool redundant = false;
    for (const auto& [a, mid] : edges_) {
      if (a != from || mid == to) continue;
      if (edges_.count({mid, to})) {
        redundant = true;
        break;
      }
    }
    if (!redundant) out.insert({from, to});
  }
  return out;
}

QuasiPartition quasi_partition_from_relation(const QuasiEquivalence& q) {
  const int n = q.size();
  std::vector<int> block_of(n, -1);
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < n; ++i) {
    if (block_of[i] != -1) continue;
    std::vector<int> members;
    for (int j = 0; j < n; ++j)
      if (q.related(i, j) && q.related(j, i)) {
        members.push_back(j);
        block_of[j] = static_cast<int>(blocks.size());
      }
    blocks.push_back(std::move(members));
  }
  // With transitivity, one witness pair decides the whole block pair.
  std::set<std::pair<int, int>> edges;
  const int b = static_cast<int>(blocks.size());
  for (int x = 0; x < b; ++x)
    for (int y = 0; y < b; ++y)
      if (x != y && q.related(blocks[x].front(), blocks[y].front())) edges.insert({x, y});
  return QuasiPartition(n, std::move(blocks), std::move(edges));
}

QuasiEquivalence relation_from_quasi_partition(const QuasiPartition& p) {
  const int n = p.node_count();
  std::vector<char> rel(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int bi = p.block_of(i);
      const int bj = p.block_of(j);
      if (bi == bj || p.edges().count({bi, bj})) rel[static_cast<size_t>(i) * n + j] = 1;
    }
  return QuasiEquivalence(n, std::move(rel));
}

// ---------------------------------------------------------------------------
// cut_at

QuasiPartition cut_at(const QuasiUltrametric& u, double delta) {
  if (!(delta >= 0.0)) throw Error("cut_at requires delta >= 0");
  const int n = u.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::max(u.at(i, j), u.at(j, i)) <= delta) parent[find(i)] = find(j);

  std::map<int, int> index_of_root;
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < n; ++i) {
    const int root = find(i);
    auto [it, inserted] = index_of_root.try_emplace(root, static_cast<int>(blocks.size()));
    if (inserted) blocks.emplace_back();
    blocks[it->second].push_back(i);
  }
  std::set<std::pair<int, int>> edges;
  const int b = static_cast<int>(blocks.size());
  for (int x = 0; x < b; ++x)
    for (int y = 0; y < b; ++y) {
      if (x == y) continue;
      double cross = kInf;
      for (int i : blocks[x])
        for (int j : blocks[y]) cross = std::min(cross, u.at(i, j));
      if (cross <= delta) edges.insert({x, y});
    }
  try {
    return QuasiPartition(n, std::move(blocks), std::move(edges));
  } catch (const QuasiPartitionError& e) {
    // Unreachable for certified inputs; certification failed upstream.
    throw Error(std::string("internal: cut of a certified quasi-ultrametric is invalid: ") +
                e.what());
  }
}

// ---------------------------------------------------------------------------
// Event replay shared by validation, partition_at, and psi.

namespace {

struct EventGroup {
  double delta = 0.0;
  std::vector<const MergeEvent*> merges;
  std::vector<const EdgeEvent*> edges;
};

std::vector<EventGroup> group_events(const std::vector<MergeEvent>& merges,
                                     const std::vector<EdgeEvent>& edges) {
  auto check_delta = [](double d, double prev) {
    if (!(d > 0.0)) throw DendrogramError("D1", "event at resolution <= 0");
    if (d == kInf) throw DendrogramError("events", "event at infinite resolution");
    if (d < prev) throw DendrogramError("events", "event resolutions must be nondecreasing");
  };
  double prev = 0.0;
  for (const auto& m : merges) {
    check_delta(m.delta, prev);
    prev = m.delta;
  }
  prev = 0.0;
  for (const auto& e : edges) {
    check_delta(e.delta, prev);
    prev = e.delta;
  }

  std::vector<EventGroup> groups;
  size_t mi = 0;
  size_t ei = 0;
  while (mi < merges.size() || ei < edges.size()) {
    double next = kInf;
    if (mi < merges.size()) next = std::min(next, merges[mi].delta);
    if (ei < edges.size()) next = std::min(next, edges[ei].delta);
    EventGroup g;
    g.delta = next;
    while (mi < merges.size() && merges[mi].delta == next) g.merges.push_back(&merges[mi++]);
    while (ei < edges.size() && edges[ei].delta == next) g.edges.push_back(&edges[ei++]);
    groups.push_back(std::move(g));
  }
  return groups;
}

struct ReplayState {
  std::map<int, std::vector<int>> blocks;  // representative -> sorted members
  std::vector<int> rep_of;
  std::set<std::pair<int, int>> edges;  // representative pairs

  explicit ReplayState(int n) : rep_of(n) {
    for (int i = 0; i < n; ++i) {
      blocks[i] = {i};
      rep_of[i] = i;
    }
  }
};

void apply_group(ReplayState& st, const EventGroup& g) {
  for (const MergeEvent* me : g.merges) {
    if (me->members.size() < 2)
      throw DendrogramError("events", "merge event needs at least two blocks");
    std::vector<int> reps;
    for (const auto& members : me->members) {
      if (members.empty()) throw DendrogramError("events", "merge event with an empty block");
      auto it = st.blocks.find(members.front());
      if (it == st.blocks.end() || it->second != members)
        throw DendrogramError("D2", "merge members are not current blocks");
      reps.push_back(members.front());
    }
    std::sort(reps.begin(), reps.end());
    if (std::adjacent_find(reps.begin(), reps.end()) != reps.end())
      throw DendrogramError("events", "merge event repeats a block");
    std::vector<int> merged;
    for (int r : reps) {
      auto& members = st.blocks[r];
      merged.insert(merged.end(), members.begin(), members.end());
      st.blocks.erase(r);
    }
    std::sort(merged.begin(), merged.end());
    const int new_rep = merged.front();
    for (int node : merged) st.rep_of[node] = new_rep;
    st.blocks[new_rep] = std::move(merged);
  }

  // Edges keep their identity only while both endpoint representatives
  // survive; a renamed pair must be restated by an event in this group.
  std::set<std::pair<int, int>> kept;
  std::set<std::pair<int, int>> renamed;
  for (const auto& [a, b] : st.edges) {
    const int a2 = st.rep_of[a];
    const int b2 = st.rep_of[b];
    if (a2 == b2) continue;  // endpoints merged
    if (a2 == a && b2 == b)
      kept.insert({a, b});
    else
      renamed.insert({a2, b2});
  }
  st.edges = std::move(kept);

  for (const EdgeEvent* ee : g.edges) {
    const int a = ee->from_rep;
    const int b = ee->to_rep;
    if (!st.blocks.count(a) || !st.blocks.count(b))
      throw DendrogramError("events", "edge event endpoint is not a block representative");
    if (a == b) throw DendrogramError("QP1", "edge event within one block");
    if (st.edges.count({a, b})) throw DendrogramError("events", "edge event repeats a live edge");
    if (st.edges.count({b, a}))
      throw DendrogramError("QP1", "edge event opposes a live edge");
    st.edges.insert({a, b});
  }

  for (const auto& e : renamed)
    if (!st.edges.count(e))
      throw DendrogramError("D3", "an influence edge disappeared without a merge");

  for (const auto& [from, mid] : st.edges)
    for (const auto& [mid2, to] : st.edges)
      if (mid2 == mid && from != to && !st.edges.count({from, to}))
        throw DendrogramError("QP2", "edge set is not transitively closed");
}

QuasiPartition partition_from_state(int n, const ReplayState& st) {
  std::map<int, int> index_of_rep;
  std::vector<std::vector<int>> blocks;
  for (const auto& [rep, members] : st.blocks) {
    index_of_rep[rep] = static_cast<int>(blocks.size());
    blocks.push_back(members);
  }
  std::set<std::pair<int, int>> edges;
  for (const auto& [a, b] : st.edges) edges.insert({index_of_rep[a], index_of_rep[b]});
  return QuasiPartition(n, std::move(blocks), std::move(edges));
}

}  // namespace

// ---------------------------------------------------------------------------
// QuasiDendrogram

QuasiDendrogram::QuasiDendrogram(std::vector<std::string> labels, std::vector<MergeEvent> merges,
                                 std::vector<EdgeEvent> edges, double max_resolution,
                                 bool strongly_connected)
    : labels_(std::move(labels)),
      merges_(std::move(merges)),
      edges_(std::move(edges)),
      max_resolution_(max_resolution),
      strongly_connected_(strongly_connected) {
  const int n = node_count();
  if (n < 1) throw DendrogramError("events", "a dendrogram needs at least one node");
  {
    auto sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw DendrogramError("events", "duplicate node label");
  }

  ReplayState st(n);
  for (const auto& g : group_events(merges_, edges_)) apply_group(st, g);

  const bool single = st.blocks.size() == 1;
  if (strongly_connected_) {
    if (!single)
      throw DendrogramError("D1", "terminal state is not a single block");
    const double last_merge = merges_.empty() ? 0.0 : merges_.back().delta;
    if (max_resolution_ != last_merge)
      throw DendrogramError("D1", "max_resolution must equal the final merge resolution");
  } else {
    if (single)
      throw DendrogramError("D1", "single terminal block contradicts the disconnected flag");
    if (max_resolution_ != kInf)
      throw DendrogramError("D1", "a disconnected dendrogram has infinite max_resolution");
  }
}

QuasiPartition QuasiDendrogram::partition_at(double delta) const {
  if (!(delta >= 0.0)) throw Error("partition_at requires delta >= 0");
  ReplayState st(node_count());
  for (const auto& g : group_events(merges_, edges_)) {
    if (g.delta > delta) break;
    apply_group(st, g);
  }
  return partition_from_state(node_count(), st);
}

// ---------------------------------------------------------------------------
// psi / upsilon

QuasiUltrametric psi(const QuasiDendrogram& d) {
  const int n = d.node_count();
  SquareMatrix u(n, kInf);
  for (int i = 0; i < n; ++i) u(i, i) = 0.0;

  // Influence between a pair first appears at some event resolution, so
  // scanning the state after each group and keeping the earliest stamp
  // evaluates the least-resolution definition directly.
  ReplayState st(n);
  for (const auto& g : group_events(d.merges(), d.edges())) {
    apply_group(st, g);
    for (const auto& [rep, members] : st.blocks)
      for (int x : members)
        for (int y : members)
          if (x != y && u(x, y) == kInf) u(x, y) = g.delta;
    for (const auto& [a, b] : st.edges)
      for (int x : st.blocks.at(a))
        for (int y : st.blocks.at(b))
          if (u(x, y) == kInf) u(x, y) = g.delta;
  }
  return QuasiUltrametric::certify(Network(d.labels(), std::move(u)));
}

QuasiDendrogram upsilon(const QuasiUltrametric& u) {
  const int n = u.size();
  std::vector<double> values;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && u.at(i, j) < kInf) values.push_back(u.at(i, j));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<std::pair<double, QuasiPartition>> cuts;
  cuts.reserve(values.size());
  for (double v : values) cuts.emplace_back(v, cut_at(u, v));
  return dendrogram_from_cuts(u.labels(), cuts);
}

QuasiDendrogram dendrogram_from_cuts(
    std::vector<std::string> labels,
    const std::vector<std::pair<double, QuasiPartition>>& cuts) {
  const int n = static_cast<int>(labels.size());
  std::vector<std::vector<int>> singleton_blocks(n);
  for (int i = 0; i < n; ++i) singleton_blocks[i] = {i};
  QuasiPartition prev(n, std::move(singleton_blocks), {});

  auto rep_edges = [](const QuasiPartition& p) {
    std::set<std::pair<int, int>> out;
    for (const auto& [a, b] : p.edges())
      out.insert({p.representative(a), p.representative(b)});
    return out;
  };

  std::vector<MergeEvent> merges;
  std::vector<EdgeEvent> edges;
  double prev_delta = 0.0;
  bool first = true;
  for (const auto& [delta, cut] : cuts) {
    if (!(delta > 0.0) || delta == kInf)
      throw DendrogramError("events", "cut resolutions must be positive and finite");
    if (!first && !(delta > prev_delta))
      throw DendrogramError("events", "cut resolutions must strictly increase");
    if (cut.node_count() != n)
      throw DendrogramError("events", "cut over a different node set");

    for (const auto& block : cut.blocks()) {
      std::set<int> prev_indices;
      for (int node : block) prev_indices.insert(prev.block_of(node));
      if (prev_indices.size() < 2) continue;
      MergeEvent event{delta, {}};
      size_t total = 0;
      for (int pb : prev_indices) {
        event.members.push_back(prev.blocks()[pb]);
        total += prev.blocks()[pb].size();
      }
      if (total != block.size())
        throw DendrogramError("D2", "a block splits between consecutive cuts");
      merges.push_back(std::move(event));
    }

    const auto prev_pairs = rep_edges(prev);
    for (const auto& [a, b] : rep_edges(cut))
      if (!prev_pairs.count({a, b})) edges.push_back({delta, a, b});

    prev = cut;
    prev_delta = delta;
    first = false;
  }

  const bool connected = prev.block_count() == 1;
  const double max_resolution =
      connected ? (merges.empty() ? 0.0 : merges.back().delta) : kInf;
  QuasiDendrogram d(std::move(labels), std::move(merges), std::move(edges), max_resolution,
                    connected);
  for (const auto& [delta, cut] : cuts)
    if (!(d.partition_at(delta) == cut))
      throw DendrogramError("D3", "cut sequence does not replay to itself");
  return d;
}

bool InfluenceOrder::is_total_order() const {
  const int b = p_.block_count();
  for (int i = 0; i < b; ++i)
    for (int j = i + 1; j < b; ++j)
      if (!comparable(i, j)) return false;
  return true;
}

}  // namespace quasiclust
