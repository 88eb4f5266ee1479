#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "quasiclust/dendrogram.hpp"
#include "quasiclust/network.hpp"

namespace quasiclust {

/// Non-negative pairwise flows (counts or dollars). The diagonal may be
/// positive (self-use); it participates in column normalization.
struct FlowTable {
  std::vector<std::string> labels;
  SquareMatrix flow;
};

struct FlowTransformResult {
  Network network;
  std::vector<std::string> warnings;
};

/// Converts a flow table to a dissimilarity network: for s != s',
/// A(s,s') = 1 - flow(s,s') / (column total of s'). A column with zero
/// total yields +inf entries into that node; a ratio of exactly one
/// would produce a zero dissimilarity and is clamped to `floor` instead.
/// Both cases emit a warning. Throws NegativeFlowError.
FlowTransformResult transform_flow(const FlowTable& table, double floor = 1e-12);

// --- text formats -----------------------------------------------------------

/// Matrix CSV: first row lists the node labels; each following row is a
/// label followed by n values, in header order. "inf" denotes +inf.
Network read_network_csv(std::istream& in, const std::string& path = "<csv>",
                         std::optional<int> quantize_digits = std::nullopt);
std::string write_network_csv(const Network& net);

/// Edge-list TSV: lines "src<TAB>dst<TAB>weight"; node order is first
/// appearance; unlisted ordered pairs become +inf and diagonals 0.
Network read_network_tsv(std::istream& in, const std::string& path = "<tsv>",
                         std::optional<int> quantize_digits = std::nullopt);

/// Flow CSV shares the matrix CSV layout with flow values.
FlowTable read_flow_csv(std::istream& in, const std::string& path = "<csv>");

/// Rounds to `digits` decimal places. Offered at ingestion only, so the
/// algebraic kernels downstream stay exact.
double quantize(double value, int digits);

// --- structured exports -----------------------------------------------------

/// Deterministic JSON for a quasi-dendrogram:
/// {labels, merges: [{delta, members: [[labels]]}],
///  edges: [{delta, from_rep, to_rep}], max_resolution, strongly_connected}
/// with an infinite max_resolution encoded as the string "inf".
std::string dendrogram_to_json(const QuasiDendrogram& d, int indent = 2);
QuasiDendrogram dendrogram_from_json(const std::string& text);

/// Deterministic JSON for one cut: blocks as label lists plus influence
/// edges named by block representatives.
std::string partition_to_json(const QuasiPartition& p, const std::vector<std::string>& labels,
                              double delta, int indent = 2);

/// DOT digraph: one cluster subgraph per block in canonical order;
/// inter-block arrows anchored at representatives, from the transitive
/// reduction when `reduced`, else the full closure. Byte-identical
/// across runs for identical input.
std::string partition_to_dot(const QuasiPartition& p, const std::vector<std::string>& labels,
                             bool reduced = true);

// --- pipeline ---------------------------------------------------------------

enum class InputFormat { MatrixCsv, EdgeTsv, FlowCsv };
enum class OutputFormat { Json, Dot, Csv };

/// One end-to-end run: ingest, transform, cluster, slice, export.
struct RunConfig {
  std::string input_path;
  InputFormat format = InputFormat::MatrixCsv;
  std::optional<ScaleMap> scale;         // entrywise rescaling after ingestion
  std::vector<double> deltas;            // cut resolutions
  OutputFormat output = OutputFormat::Json;
  bool reduced_edges = false;            // DOT arrows: closure by default
  std::optional<int> quantize_digits;
  int oracle_cap = 8;
  int distance_cap = 16;
  std::string output_dir;                // empty: no artifacts written
};

struct CutSummary {
  double delta = 0.0;
  int block_count = 0;
  int edge_count = 0;
};

struct RunSummary {
  int node_count = 0;
  bool strongly_connected = false;
  double separation = 0.0;
  double max_resolution = 0.0;
  std::vector<double> merge_resolutions;
  std::vector<CutSummary> cuts;
  std::vector<std::string> warnings;
  std::vector<std::string> artifacts;  // paths written, in order
};

/// Executes validate -> (flow transform) -> (scale) -> dsl -> upsilon ->
/// cut at each requested delta -> export, writing artifacts under
/// `output_dir` when set. Identical config and input produce
/// byte-identical artifacts.
RunSummary run_pipeline(const RunConfig& cfg);

/// Reads and validates the configured input (ingestion + optional flow
/// transform + optional rescaling + quantization), without clustering.
std::pair<Network, std::vector<std::string>> ingest(const RunConfig& cfg);

InputFormat input_format_from_path(const std::string& path);

}  // namespace quasiclust
