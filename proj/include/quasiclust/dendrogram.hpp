#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quasiclust/network.hpp"

namespace quasiclust {

/// Reflexive, transitive boolean relation on n nodes (a preorder).
class QuasiEquivalence {
 public:
  /// `rel` is row-major, rel[i*n+j] nonzero meaning i leads to j.
  /// Throws QuasiEquivalenceError (reflexivity/transitivity witness).
  QuasiEquivalence(int n, std::vector<char> rel);

  int size() const { return n_; }
  bool related(int i, int j) const { return rel_[static_cast<size_t>(i) * n_ + j] != 0; }

  bool operator==(const QuasiEquivalence& other) const = default;

 private:
  int n_ = 0;
  std::vector<char> rel_;
};

/// A partition of nodes 0..n-1 into blocks plus a unidirectional,
/// transitively closed influence edge set between blocks; always a DAG.
///
/// Canonical form: each block sorted ascending, blocks ordered by their
/// smallest member, edges keyed by block index in that order. The
/// constructor canonicalizes and validates (cover/disjointness, QP1,
/// QP2); it throws QuasiPartitionError with a witness otherwise.
class QuasiPartition {
 public:
  QuasiPartition(int n, std::vector<std::vector<int>> blocks,
                 std::set<std::pair<int, int>> edges);

  int node_count() const { return n_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  /// Transitively closed edge set over block indices.
  const std::set<std::pair<int, int>>& edges() const { return edges_; }

  int block_of(int node) const { return block_of_[node]; }
  /// Smallest member; block identity across resolutions is tracked by it.
  int representative(int block) const { return blocks_[block].front(); }

  /// Transitive reduction view (unique for DAGs); for rendering.
  std::set<std::pair<int, int>> reduced_edges() const;

  bool operator==(const QuasiPartition& other) const = default;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
  std::set<std::pair<int, int>> edges_;
  std::vector<int> block_of_;
};

/// Mutual-leads classes become blocks; one-way leads become edges.
QuasiPartition quasi_partition_from_relation(const QuasiEquivalence& q);

/// x leads to x' iff same block or an edge joins their blocks. Inverse
/// of quasi_partition_from_relation.
QuasiEquivalence relation_from_quasi_partition(const QuasiPartition& p);

/// Quasi-partition of a certified quasi-ultrametric at resolution delta:
/// blocks are classes of max(u(x,x'), u(x',x)) <= delta, and distinct
/// blocks B1, B2 are joined iff min over cross pairs of u(x1,x2) <= delta.
QuasiPartition cut_at(const QuasiUltrametric& u, double delta);

/// Blocks (each a sorted node list) that fuse into one block at `delta`,
/// listed by their smallest members.
struct MergeEvent {
  double delta;
  std::vector<std::vector<int>> members;

  bool operator==(const MergeEvent& other) const = default;
};

/// A block-level influence edge appearing at `delta`, named by the
/// representatives of its endpoint blocks at that resolution.
struct EdgeEvent {
  double delta;
  int from_rep;
  int to_rep;

  bool operator==(const EdgeEvent& other) const = default;
};

/// A quasi-dendrogram as a finite, right-continuous event list: the
/// family of quasi-partitions is piecewise constant, so merge and edge
/// appearance events determine it losslessly.
///
/// Replay semantics at an event resolution: merges apply first; an edge
/// whose endpoint representatives are unchanged persists across merges,
/// while an edge whose representative pair changed is dropped and must
/// be restated by an explicit event at the same resolution (the event
/// list produced by `upsilon` always does).
///
/// Construction validates the boundary, hierarchy, and continuity
/// conditions plus QP1/QP2 at every resolution, throwing
/// DendrogramError with the failed condition id.
class QuasiDendrogram {
 public:
  QuasiDendrogram(std::vector<std::string> labels, std::vector<MergeEvent> merges,
                  std::vector<EdgeEvent> edges, double max_resolution, bool strongly_connected);

  int node_count() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<MergeEvent>& merges() const { return merges_; }
  const std::vector<EdgeEvent>& edges() const { return edges_; }
  /// Resolution at which a single block forms; +inf when the underlying
  /// network is not strongly connected (boundary condition unmet).
  double max_resolution() const { return max_resolution_; }
  bool strongly_connected() const { return strongly_connected_; }

  /// State of the nested family at a given resolution.
  QuasiPartition partition_at(double delta) const;

  bool operator==(const QuasiDendrogram& other) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<MergeEvent> merges_;
  std::vector<EdgeEvent> edges_;
  double max_resolution_ = 0.0;
  bool strongly_connected_ = true;
};

/// Sweeps the sorted distinct finite values of u and records state
/// changes as events. Inverse of psi.
QuasiDendrogram upsilon(const QuasiUltrametric& u);

/// u(x,x') = the least event resolution at which x and x' share a block
/// or an edge joins their blocks; pairs never related get +inf (only
/// possible when the dendrogram is not strongly connected).
QuasiUltrametric psi(const QuasiDendrogram& d);

/// Assembles a dendrogram from explicit cuts at strictly increasing
/// resolutions (the state below the first cut is all singletons, no
/// edges). Each cut must coarsen the previous one. The replayed event
/// list is checked against every given cut.
QuasiDendrogram dendrogram_from_cuts(
    std::vector<std::string> labels,
    const std::vector<std::pair<double, QuasiPartition>>& cuts);

/// Partial-order queries over a quasi-partition's influence DAG.
class InfluenceOrder {
 public:
  explicit InfluenceOrder(QuasiPartition p) : p_(std::move(p)) {}

  /// Edge from block bi to block bj; irreflexive, antisymmetric,
  /// transitive.
  bool dominates(int bi, int bj) const { return p_.edges().count({bi, bj}) > 0; }
  bool comparable(int bi, int bj) const { return dominates(bi, bj) || dominates(bj, bi); }
  /// Every pair of distinct blocks comparable.
  bool is_total_order() const;

  const QuasiPartition& partition() const { return p_; }

 private:
  QuasiPartition p_;
};

}  // namespace quasiclust
