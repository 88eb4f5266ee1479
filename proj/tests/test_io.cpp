#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "quasiclust/dioid.hpp"
#include "quasiclust/io.hpp"
#include "quasiclust/suites.hpp"

using namespace quasiclust;

namespace {

const std::string kExampleCsv = "x1,x2,x3\nx1,0,1,3\nx2,2,0,3\nx3,2,1,0\n";

Network parse_csv(const std::string& text, std::optional<int> digits = std::nullopt) {
  std::istringstream in(text);
  return read_network_csv(in, "<test>", digits);
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("quasiclust_test_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("matrix csv parsing") {
  const Network net = parse_csv(kExampleCsv);
  CHECK(net.labels() == std::vector<std::string>{"x1", "x2", "x3"});
  CHECK(net.at(0, 1) == 1);
  CHECK(net.at(2, 0) == 2);

  CHECK(parse_csv("a,b\na,0,inf\nb,2,0\n").at(0, 1) == kInf);

  CHECK_THROWS_AS(parse_csv(""), IngestError);
  CHECK_THROWS_AS(parse_csv("a,b\na,0\nb,2,0\n"), IngestError);            // ragged row
  CHECK_THROWS_AS(parse_csv("a,b\nb,0,1\na,2,0\n"), IngestError);          // label order
  CHECK_THROWS_AS(parse_csv("a,b\na,0,1\n"), IngestError);                 // missing row
  CHECK_THROWS_AS(parse_csv("a,b\na,0,1\nb,2,0\nb,2,0\n"), IngestError);   // extra row
  CHECK_THROWS_AS(parse_csv("a,b\na,0,oops\nb,2,0\n"), IngestError);       // bad token
  CHECK_THROWS_AS(parse_csv("a,b\na,0,-1\nb,2,0\n"), ValidationError);
}

TEST_CASE("matrix csv writing is canonical and round trips") {
  const Network net = parse_csv(kExampleCsv);
  const std::string once = write_network_csv(net);
  CHECK(once == kExampleCsv);
  CHECK(write_network_csv(parse_csv(once)) == once);

  // Shortest round-trip formatting holds for awkward doubles too.
  std::mt19937_64 rng(43);
  const Network random = random_network(rng, 5, 0.2);
  const std::string text = write_network_csv(random);
  CHECK(parse_csv(text) == random);
  CHECK(write_network_csv(parse_csv(text)) == text);
}

TEST_CASE("edge tsv parsing") {
  std::istringstream in("a\tb\t1.5\nb\ta\t2\nb\tc\t4\n");
  const Network net = read_network_tsv(in, "<test>");
  CHECK(net.labels() == std::vector<std::string>{"a", "b", "c"});
  CHECK(net.at(0, 1) == 1.5);
  CHECK(net.at(1, 2) == 4);
  CHECK(net.at(0, 2) == kInf);  // unlisted ordered pair
  CHECK(net.at(2, 0) == kInf);
  CHECK_FALSE(net.strongly_connected());

  std::istringstream dup("a\tb\t1\na\tb\t2\n");
  CHECK_THROWS_AS(read_network_tsv(dup, "<test>"), IngestError);
  std::istringstream short_line("a\tb\n");
  CHECK_THROWS_AS(read_network_tsv(short_line, "<test>"), IngestError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_network_tsv(empty, "<test>"), IngestError);
}

TEST_CASE("CRLF line endings are accepted") {
  const Network net = parse_csv("a,b\r\na,0,1\r\nb,2,0\r\n");
  CHECK(net.labels() == std::vector<std::string>{"a", "b"});
  CHECK(net.at(1, 0) == 2);
  std::istringstream in("a\tb\t1\r\nb\ta\t2\r\n");
  CHECK(read_network_tsv(in, "<test>").at(0, 1) == 1);
}

TEST_CASE("quantization applies at ingestion only") {
  CHECK(quantize(3.14159, 2) == 3.14);
  CHECK(quantize(kInf, 3) == kInf);
  CHECK_THROWS_AS(quantize(1.0, -1), Error);

  const Network net = parse_csv("a,b\na,0,1.23456\nb,2.71828,0\n", 2);
  CHECK(net.at(0, 1) == 1.23);
  CHECK(net.at(1, 0) == 2.72);
}

TEST_CASE("flow transform") {
  SUBCASE("two sources split a column") {
    const FlowTable table{{"a", "b", "s"},
                          SquareMatrix::from_rows({{0, 1, 30}, {1, 0, 70}, {1, 1, 0}})};
    const auto result = transform_flow(table);
    CHECK(result.network.at(0, 2) == 1.0 - 0.3);
    CHECK(result.network.at(1, 2) == 1.0 - 0.7);
    CHECK(result.warnings.empty());
  }

  SUBCASE("all-zero column becomes +inf with a warning") {
    const FlowTable table{{"a", "b"}, SquareMatrix::from_rows({{0, 0}, {3, 0}})};
    const auto result = transform_flow(table);
    CHECK(result.network.at(0, 1) == kInf);  // nothing flows into b
    CHECK(result.network.at(1, 0) == 1e-12);  // b is the only source into a
    REQUIRE(result.warnings.size() == 2);
  }

  SUBCASE("single-source column is clamped away from zero") {
    const FlowTable table{{"a", "b"}, SquareMatrix::from_rows({{0, 5}, {0, 0}})};
    const auto result = transform_flow(table);
    CHECK(result.network.at(0, 1) == 1e-12);
    REQUIRE(result.warnings.size() == 2);  // clamp plus the empty column for node a
  }

  SUBCASE("self-flow joins the denominator") {
    // Column b receives 5 from a and keeps 5 of its own.
    const FlowTable table{{"a", "b"}, SquareMatrix::from_rows({{0, 5}, {2, 5}})};
    const auto result = transform_flow(table);
    CHECK(result.network.at(0, 1) == 0.5);
  }

  SUBCASE("negative flow is rejected") {
    const FlowTable table{{"a", "b"}, SquareMatrix::from_rows({{0, -2}, {3, 0}})};
    CHECK_THROWS_AS(transform_flow(table), NegativeFlowError);
  }

  SUBCASE("finite entries lie in (0,1] and column ratios sum below one") {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 50; ++t) {
      const int n = 2 + t % 5;
      SquareMatrix flow(n);
      std::uniform_real_distribution<double> amount(0.0, 100.0);
      std::uniform_real_distribution<double> coin(0.0, 1.0);
      const bool zero_diagonal = t % 2 == 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) {
            flow(i, j) = zero_diagonal ? 0.0 : amount(rng);
          } else {
            flow(i, j) = coin(rng) < 0.3 ? 0.0 : amount(rng);
          }
        }
      const auto result = transform_flow(FlowTable{default_labels(n), flow});
      for (int j = 0; j < n; ++j) {
        double ratio_sum = 0.0;
        bool any_finite = false;
        for (int i = 0; i < n; ++i) {
          if (i == j) continue;
          const double v = result.network.at(i, j);
          if (v == kInf) continue;
          any_finite = true;
          CHECK(v > 0.0);
          CHECK(v <= 1.0);
          ratio_sum += 1.0 - v;
        }
        if (any_finite) CHECK(ratio_sum <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("flow csv ingestion end to end") {
  std::istringstream in("a,b,c\na,0,30,5\nb,70,0,5\nc,10,20,0\n");
  const FlowTable table = read_flow_csv(in, "<test>");
  const auto result = transform_flow(table);
  CHECK(result.network.at(1, 0) == 1.0 - 70.0 / 80.0);
  CHECK(result.network.at(0, 1) == 1.0 - 30.0 / 50.0);
  CHECK(result.network.at(0, 2) == 0.5);
}

TEST_CASE("dendrogram json round trip") {
  const QuasiUltrametric u =
      dsl(parse_csv(kExampleCsv));
  const QuasiDendrogram d = upsilon(u);
  const std::string text = dendrogram_to_json(d);
  CHECK(dendrogram_from_json(text) == d);
  CHECK(dendrogram_to_json(dendrogram_from_json(text)) == text);

  // Disconnected case: infinite resolution encodes as "inf".
  const QuasiDendrogram partial =
      upsilon(dsl(Network({"a", "b"}, SquareMatrix::from_rows({{0, 1}, {kInf, 0}}))));
  const std::string partial_text = dendrogram_to_json(partial);
  CHECK(partial_text.find("\"inf\"") != std::string::npos);
  CHECK(dendrogram_from_json(partial_text) == partial);

  CHECK_THROWS_AS(dendrogram_from_json("not json"), Error);
  CHECK_THROWS_AS(dendrogram_from_json("{}"), Error);

  std::mt19937_64 rng(83);
  for (int t = 0; t < 40; ++t) {
    const QuasiDendrogram random = random_dendrogram(rng, 2 + t % 6);
    CHECK(dendrogram_from_json(dendrogram_to_json(random)) == random);
  }
}

TEST_CASE("dot export") {
  const std::vector<std::string> labels{"x1", "x2", "x3"};
  const QuasiUltrametric u = dsl(parse_csv(kExampleCsv));

  const QuasiPartition singletons = cut_at(u, 0.0);
  const std::string dot0 = partition_to_dot(singletons, labels);
  CHECK(dot0.find("cluster_0") != std::string::npos);
  CHECK(dot0.find("cluster_2") != std::string::npos);
  CHECK(dot0.find("->") == std::string::npos);

  const QuasiPartition two = cut_at(u, 2.0);
  const std::string dot2 = partition_to_dot(two, labels);
  CHECK(dot2.find("subgraph cluster_0") != std::string::npos);
  CHECK(dot2.find("subgraph cluster_1") != std::string::npos);
  CHECK(dot2.find("\"x3\" -> \"x1\"") != std::string::npos);
  CHECK(partition_to_dot(two, labels) == dot2);  // deterministic

  // A three-block chain: reduction draws two arrows, the closure three.
  const QuasiPartition chain(3, {{0}, {1}, {2}}, {{0, 1}, {1, 2}, {0, 2}});
  const std::string reduced = partition_to_dot(chain, labels, true);
  const std::string closed = partition_to_dot(chain, labels, false);
  auto count_arrows = [](const std::string& text) {
    size_t count = 0;
    for (size_t pos = text.find("->"); pos != std::string::npos; pos = text.find("->", pos + 1))
      ++count;
    return count;
  };
  CHECK(count_arrows(reduced) == 2);
  CHECK(count_arrows(closed) == 3);
}

TEST_CASE("pipeline determinism and artifacts") {
  TempDir tmp;
  const auto input = tmp.path / "example3.csv";
  std::ofstream(input) << kExampleCsv;

  RunConfig cfg;
  cfg.input_path = input.string();
  cfg.deltas = {0.5, 1, 2, 3};

  SUBCASE("json artifacts are byte-identical across runs") {
    cfg.output = OutputFormat::Json;
    cfg.output_dir = (tmp.path / "json1").string();
    const RunSummary first = run_pipeline(cfg);
    cfg.output_dir = (tmp.path / "json2").string();
    const RunSummary second = run_pipeline(cfg);
    REQUIRE(first.artifacts.size() == 5);  // dendrogram + four cuts
    REQUIRE(second.artifacts.size() == 5);
    for (size_t i = 0; i < first.artifacts.size(); ++i)
      CHECK(slurp(first.artifacts[i]) == slurp(second.artifacts[i]));
    CHECK(first.merge_resolutions == std::vector<double>{2, 3});
    CHECK(first.node_count == 3);
    CHECK(first.strongly_connected);
    CHECK(first.separation == 1);
  }

  SUBCASE("dot artifacts match the four structural panels") {
    cfg.output = OutputFormat::Dot;
    cfg.output_dir = (tmp.path / "dot").string();
    const RunSummary summary = run_pipeline(cfg);
    REQUIRE(summary.cuts.size() == 4);
    CHECK(summary.cuts[0].block_count == 3);  // delta 0.5: singletons, no edges
    CHECK(summary.cuts[0].edge_count == 0);
    CHECK(summary.cuts[1].block_count == 3);  // delta 1: two influence edges
    CHECK(summary.cuts[1].edge_count == 2);
    CHECK(summary.cuts[2].block_count == 2);  // delta 2: one merge, one edge
    CHECK(summary.cuts[2].edge_count == 1);
    CHECK(summary.cuts[3].block_count == 1);  // delta 3: one block
    CHECK(summary.cuts[3].edge_count == 0);
    for (const auto& path : summary.artifacts) CHECK(std::filesystem::exists(path));
  }

  SUBCASE("csv output writes the quasi-ultrametric") {
    cfg.output = OutputFormat::Csv;
    cfg.output_dir = (tmp.path / "csv").string();
    cfg.deltas.clear();
    const RunSummary summary = run_pipeline(cfg);
    REQUIRE(summary.artifacts.size() == 1);
    CHECK(slurp(summary.artifacts[0]) == kExampleCsv);  // already a quasi-ultrametric
  }

  SUBCASE("missing input fails with an ingest error") {
    cfg.input_path = (tmp.path / "absent.csv").string();
    CHECK_THROWS_AS(run_pipeline(cfg), IngestError);
  }

  SUBCASE("scale option is applied entrywise") {
    cfg.scale = ScaleMap::parse("2x");
    const RunSummary summary = run_pipeline(cfg);
    CHECK(summary.separation == 2);
    CHECK(summary.merge_resolutions == std::vector<double>{4, 6});
  }
}

TEST_CASE("input format detection") {
  CHECK(input_format_from_path("net.tsv") == InputFormat::EdgeTsv);
  CHECK(input_format_from_path("net.csv") == InputFormat::MatrixCsv);
  CHECK(input_format_from_path("net") == InputFormat::MatrixCsv);
}
