#include <doctest.h>

#include <random>

#include "quasiclust/dendrogram.hpp"
#include "quasiclust/dioid.hpp"
#include "quasiclust/suites.hpp"

using namespace quasiclust;

namespace {

Network net_from(std::vector<std::string> labels, const std::vector<std::vector<double>>& rows) {
  return Network(std::move(labels), SquareMatrix::from_rows(rows));
}

QuasiUltrametric worked_example() {
  return QuasiUltrametric::certify(
      net_from({"x1", "x2", "x3"}, {{0, 1, 3}, {2, 0, 3}, {2, 1, 0}}));
}

QuasiEquivalence relation_from(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<char> rel(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) rel[static_cast<size_t>(i) * n + i] = 1;
  for (const auto& [i, j] : pairs) rel[static_cast<size_t>(i) * n + j] = 1;
  return QuasiEquivalence(n, std::move(rel));
}

}  // namespace

TEST_CASE("quasi-equivalence validation") {
  CHECK_THROWS_AS(QuasiEquivalence(2, {1, 0, 0, 0}), QuasiEquivalenceError);   // not reflexive
  CHECK_THROWS_AS(relation_from(3, {{0, 1}, {1, 2}}), QuasiEquivalenceError);  // not transitive
  CHECK_NOTHROW(relation_from(3, {{0, 1}, {1, 2}, {0, 2}}));
  CHECK_THROWS_AS(QuasiEquivalence(2, {1, 1, 1}), DimensionMismatchError);
}

TEST_CASE("quasi-partition from relation") {
  SUBCASE("full relation collapses to one block") {
    const auto p = quasi_partition_from_relation(
        relation_from(3, {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}}));
    CHECK(p.blocks() == std::vector<std::vector<int>>{{0, 1, 2}});
    CHECK(p.edges().empty());
  }
  SUBCASE("identity relation keeps singletons") {
    const auto p = quasi_partition_from_relation(relation_from(3, {}));
    CHECK(p.block_count() == 3);
    CHECK(p.edges().empty());
  }
  SUBCASE("one-way relation becomes an edge") {
    const auto p = quasi_partition_from_relation(relation_from(2, {{0, 1}}));
    CHECK(p.blocks() == std::vector<std::vector<int>>{{0}, {1}});
    CHECK(p.edges() == std::set<std::pair<int, int>>{{0, 1}});
  }
}

TEST_CASE("quasi-partition validation") {
  CHECK_THROWS_AS(QuasiPartition(3, {{0, 1}}, {}), QuasiPartitionError);          // not covering
  CHECK_THROWS_AS(QuasiPartition(2, {{0, 1}, {1}}, {}), QuasiPartitionError);     // overlap
  CHECK_THROWS_AS(QuasiPartition(2, {{0}, {1}}, {{0, 0}}), QuasiPartitionError);  // self loop
  CHECK_THROWS_AS(QuasiPartition(2, {{0}, {1}}, {{0, 1}, {1, 0}}),
                  QuasiPartitionError);  // both directions
  CHECK_THROWS_AS(QuasiPartition(3, {{0}, {1}, {2}}, {{0, 1}, {1, 2}}),
                  QuasiPartitionError);  // missing transitive edge
  CHECK_NOTHROW(QuasiPartition(3, {{0}, {1}, {2}}, {{0, 1}, {1, 2}, {0, 2}}));

  // Canonicalization: blocks reordered by smallest member, edges remapped.
  const QuasiPartition p(4, {{3}, {1, 0}, {2}}, {{2, 0}, {1, 0}, {1, 2}});
  CHECK(p.blocks() == std::vector<std::vector<int>>{{0, 1}, {2}, {3}});
  CHECK(p.edges() == std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(p.block_of(1) == 0);
  CHECK(p.representative(0) == 0);
}

TEST_CASE("relation round trips") {
  // A six-block quasi-partition with a sparse influence DAG.
  const QuasiPartition p(
      10, {{0, 1}, {2}, {3, 4, 5}, {6}, {7, 8}, {9}},
      {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {3, 4}});
  const QuasiEquivalence q = relation_from_quasi_partition(p);
  CHECK(quasi_partition_from_relation(q) == p);

  std::mt19937_64 rng(53);
  for (int t = 0; t < 200; ++t) {
    // Random preorder: reflexive-transitive closure of a random relation.
    const int n = 2 + t % 6;
    std::vector<char> rel(static_cast<size_t>(n) * n, 0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rel[static_cast<size_t>(i) * n + j] = i == j || coin(rng) < 0.25;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (rel[static_cast<size_t>(i) * n + k] && rel[static_cast<size_t>(k) * n + j])
            rel[static_cast<size_t>(i) * n + j] = 1;
    const QuasiEquivalence original(n, rel);
    const QuasiPartition partition = quasi_partition_from_relation(original);
    CHECK(relation_from_quasi_partition(partition) == original);
    CHECK(quasi_partition_from_relation(relation_from_quasi_partition(partition)) == partition);
  }
}

TEST_CASE("cut_at on the worked example") {
  const QuasiUltrametric u = worked_example();

  const QuasiPartition at0 = cut_at(u, 0);
  CHECK(at0.block_count() == 3);
  CHECK(at0.edges().empty());

  for (double delta : {1.0, 1.5}) {
    const QuasiPartition p = cut_at(u, delta);
    CHECK(p.blocks() == std::vector<std::vector<int>>{{0}, {1}, {2}});
    CHECK(p.edges() == std::set<std::pair<int, int>>{{0, 1}, {2, 1}});
  }

  for (double delta : {2.0, 2.5}) {
    const QuasiPartition p = cut_at(u, delta);
    CHECK(p.blocks() == std::vector<std::vector<int>>{{0, 1}, {2}});
    CHECK(p.edges() == std::set<std::pair<int, int>>{{1, 0}});
  }

  const QuasiPartition at3 = cut_at(u, 3);
  CHECK(at3.block_count() == 1);
  CHECK(at3.edges().empty());

  CHECK_THROWS_AS(cut_at(u, -1.0), Error);
}

TEST_CASE("upsilon on the worked example") {
  const QuasiDendrogram d = upsilon(worked_example());
  REQUIRE(d.merges().size() == 2);
  CHECK(d.merges()[0] == MergeEvent{2.0, {{0}, {1}}});
  CHECK(d.merges()[1] == MergeEvent{3.0, {{0, 1}, {2}}});
  REQUIRE(d.edges().size() == 3);
  CHECK(d.edges()[0] == EdgeEvent{1.0, 0, 1});
  CHECK(d.edges()[1] == EdgeEvent{1.0, 2, 1});
  CHECK(d.edges()[2] == EdgeEvent{2.0, 2, 0});
  CHECK(d.max_resolution() == 3.0);
  CHECK(d.strongly_connected());
}

TEST_CASE("psi inverts upsilon on the worked example") {
  const QuasiUltrametric u = worked_example();
  CHECK(psi(upsilon(u)) == u);
}

TEST_CASE("psi of a single merge gives a constant symmetric matrix") {
  const QuasiDendrogram d({"a", "b", "c"}, {{4.0, {{0}, {1}, {2}}}}, {}, 4.0, true);
  const QuasiUltrametric u = psi(d);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(u.at(i, j) == 4.0);
}

TEST_CASE("single-node dendrogram") {
  const QuasiDendrogram d = upsilon(dsl(net_from({"a"}, {{0}})));
  CHECK(d.merges().empty());
  CHECK(d.edges().empty());
  CHECK(d.max_resolution() == 0.0);
  CHECK(d.strongly_connected());
}

TEST_CASE("disconnected inputs yield partial dendrograms") {
  const Network net = net_from({"a", "b"}, {{0, 1}, {kInf, 0}});
  const QuasiDendrogram d = upsilon(dsl(net));
  CHECK_FALSE(d.strongly_connected());
  CHECK(d.max_resolution() == kInf);
  CHECK(d.merges().empty());
  REQUIRE(d.edges().size() == 1);
  CHECK(d.edges()[0] == EdgeEvent{1.0, 0, 1});
  CHECK(psi(d).network() == net);
}

TEST_CASE("cut_at agrees with event replay at and between critical values") {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 60; ++t) {
    const QuasiUltrametric u = dsl(random_network(rng, 2 + t % 7, t % 3 == 0 ? 0.25 : 0.0));
    const QuasiDendrogram d = upsilon(u);
    std::vector<double> samples{0.0};
    for (int i = 0; i < u.size(); ++i)
      for (int j = 0; j < u.size(); ++j)
        if (i != j && u.at(i, j) < kInf) {
          samples.push_back(u.at(i, j));
          samples.push_back(u.at(i, j) + 0.375);
        }
    for (double delta : samples) CHECK(cut_at(u, delta) == d.partition_at(delta));
  }
}

TEST_CASE("blocks refine monotonically and edges persist") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 40; ++t) {
    const QuasiUltrametric u = dsl(random_network(rng, 3 + t % 6));
    std::vector<double> values;
    for (int i = 0; i < u.size(); ++i)
      for (int j = 0; j < u.size(); ++j)
        if (i != j) values.push_back(u.at(i, j));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (size_t v = 0; v + 1 < values.size(); ++v) {
      const QuasiPartition fine = cut_at(u, values[v]);
      const QuasiPartition coarse = cut_at(u, values[v + 1]);
      for (const auto& block : fine.blocks()) {
        const int target = coarse.block_of(block.front());
        for (int node : block) CHECK(coarse.block_of(node) == target);
      }
      for (const auto& [from, to] : fine.edges()) {
        const int cf = coarse.block_of(fine.representative(from));
        const int ct = coarse.block_of(fine.representative(to));
        CHECK((cf == ct || coarse.edges().count({cf, ct}) > 0));
      }
    }
  }
}

TEST_CASE("symmetric ultrametrics reduce to classical dendrograms") {
  const Network sym =
      net_from({"a", "b", "c", "d"},
               {{0, 1, 4, 4}, {1, 0, 4, 4}, {4, 4, 0, 2}, {4, 4, 2, 0}});
  const QuasiUltrametric u = QuasiUltrametric::certify(sym);
  for (double delta : {0.0, 1.0, 2.0, 3.0, 4.0}) CHECK(cut_at(u, delta).edges().empty());
  const QuasiDendrogram d = upsilon(u);
  CHECK(d.edges().empty());
  REQUIRE(d.merges().size() == 3);
  CHECK(d.merges()[0].delta == 1.0);
  CHECK(d.merges()[1].delta == 2.0);
  CHECK(d.merges()[2].delta == 4.0);
}

TEST_CASE("round trips on random inputs") {
  CHECK(suite_ultrametric_round_trip(67, 200).ok());
  CHECK(suite_dendrogram_round_trip(71, 100).ok());
}

TEST_CASE("dendrogram validation rejects malformed event lists") {
  using Members = std::vector<std::vector<int>>;
  const std::vector<std::string> ab{"a", "b"};

  auto condition_of = [](auto&& make) -> std::string {
    try {
      make();
    } catch (const DendrogramError& e) {
      return e.condition();
    }
    return "none";
  };

  // merge at resolution zero breaks the first boundary condition
  CHECK(condition_of([&] {
          QuasiDendrogram(ab, {{0.0, Members{{0}, {1}}}}, {}, 0.0, true);
        }) == "D1");
  // never reaching one block contradicts the connected flag
  CHECK(condition_of([&] { QuasiDendrogram(ab, {}, {}, 0.0, true); }) == "D1");
  // wrong terminal resolution
  CHECK(condition_of([&] {
          QuasiDendrogram(ab, {{1.0, Members{{0}, {1}}}}, {}, 2.0, true);
        }) == "D1");
  // single block despite the disconnected flag
  CHECK(condition_of([&] {
          QuasiDendrogram(ab, {{1.0, Members{{0}, {1}}}}, {}, kInf, false);
        }) == "D1");
  // merging a set that is not a current block
  CHECK(condition_of([&] {
          QuasiDendrogram({"a", "b", "c"}, {{1.0, Members{{0, 1}, {2}}}}, {}, 1.0, true);
        }) == "D2");
  // out-of-order events
  CHECK(condition_of([&] {
          QuasiDendrogram({"a", "b", "c"},
                          {{2.0, Members{{0}, {1}}}, {1.0, Members{{0, 1}, {2}}}}, {}, 1.0,
                          true);
        }) == "events");
  // edge event naming a non-representative
  CHECK(condition_of([&] {
          QuasiDendrogram(ab, {{1.0, Members{{0}, {1}}}}, {{0.5, 1, 2}}, 1.0, true);
        }) == "events");
  // opposite edges
  CHECK(condition_of([&] {
          QuasiDendrogram(ab, {{2.0, Members{{0}, {1}}}}, {{1.0, 0, 1}, {1.0, 1, 0}}, 2.0,
                          true);
        }) == "QP1");
  // missing transitive closure edge
  CHECK(condition_of([&] {
          QuasiDendrogram({"a", "b", "c"},
                          {{9.0, Members{{0}, {1}, {2}}}},
                          {{1.0, 0, 1}, {1.0, 1, 2}}, 9.0, true);
        }) == "QP2");
  // an edge silently dropped after its endpoint merged away
  CHECK(condition_of([&] {
          QuasiDendrogram({"a", "b", "c"},
                          {{2.0, Members{{1}, {2}}}, {3.0, Members{{0}, {1, 2}}}},
                          {{1.0, 0, 2}}, 3.0, true);
        }) == "D3");
  // duplicate labels
  CHECK(condition_of([&] {
          QuasiDendrogram({"a", "a"}, {{1.0, Members{{0}, {1}}}}, {}, 1.0, true);
        }) == "events");
}

TEST_CASE("influence order queries") {
  // Shape of the west-coast cut: one three-state block influencing two
  // singletons, with the singletons ordered between themselves.
  const QuasiPartition p(5, {{0, 1, 2}, {3}, {4}}, {{0, 1}, {0, 2}, {1, 2}});
  const InfluenceOrder order(p);
  CHECK(order.dominates(0, 1));
  CHECK(order.dominates(0, 2));
  CHECK(order.dominates(1, 2));
  CHECK_FALSE(order.dominates(1, 0));
  CHECK(order.comparable(2, 0));
  CHECK(order.is_total_order());

  const InfluenceOrder empty(QuasiPartition(3, {{0}, {1}, {2}}, {}));
  CHECK_FALSE(empty.comparable(0, 1));
  CHECK_FALSE(empty.is_total_order());

  const InfluenceOrder chain(
      InfluenceOrder(QuasiPartition(3, {{0}, {1}, {2}}, {{0, 1}, {1, 2}, {0, 2}})));
  CHECK(chain.dominates(0, 2));

  const InfluenceOrder partial(QuasiPartition(4, {{0}, {1}, {2}, {3}}, {{0, 1}, {2, 3}}));
  CHECK_FALSE(partial.is_total_order());
}
