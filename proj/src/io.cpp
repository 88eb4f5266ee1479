#include "quasiclust/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "quasiclust/dioid.hpp"

namespace quasiclust {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split(std::string_view line, char sep, bool trim_fields) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= line.size()) {
    size_t end = line.find(sep, start);
    if (end == std::string_view::npos) end = line.size();
    auto field = line.substr(start, end - start);
    out.emplace_back(trim_fields ? trim(field) : field);
    start = end + 1;
  }
  return out;
}

double parse_value(std::string_view token, const std::string& path, int line) {
  if (token == "inf") return kInf;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw IngestError(path, line, "cannot parse value '" + std::string(token) + "'");
  if (v == 0.0) v = 0.0;  // normalize -0
  return v;
}

double maybe_quantize(double v, const std::optional<int>& digits) {
  return digits ? quantize(v, *digits) : v;
}

// Reads the "labels header + label-prefixed rows" layout shared by
// matrix and flow CSVs.
std::pair<std::vector<std::string>, SquareMatrix> read_labeled_square(
    std::istream& in, const std::string& path, char sep, std::optional<int> digits) {
  std::string line;
  int line_no = 0;
  std::vector<std::string> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    labels = split(line, sep, true);
    break;
  }
  if (labels.empty()) throw IngestError(path, line_no, "empty input");
  const int n = static_cast<int>(labels.size());
  SquareMatrix m(n);
  int row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (row >= n) throw IngestError(path, line_no, "more rows than labels");
    auto fields = split(line, sep, true);
    if (static_cast<int>(fields.size()) != n + 1)
      throw IngestError(path, line_no,
                        "expected a label plus " + std::to_string(n) + " values, got " +
                            std::to_string(fields.size()) + " fields");
    if (fields[0] != labels[row])
      throw IngestError(path, line_no,
                        "row label '" + fields[0] + "' does not match header label '" +
                            labels[row] + "'");
    for (int j = 0; j < n; ++j)
      m(row, j) = maybe_quantize(parse_value(fields[j + 1], path, line_no), digits);
    ++row;
  }
  if (row != n)
    throw IngestError(path, line_no, "expected " + std::to_string(n) + " rows, got " +
                                         std::to_string(row));
  return {std::move(labels), std::move(m)};
}

void require_writable_label(const std::string& label) {
  if (label.empty() || label.find_first_of(",\t\n\r\"") != std::string::npos)
    throw Error("label '" + label + "' cannot appear in text exports");
}

}  // namespace

double quantize(double value, int digits) {
  if (digits < 0 || digits > 15) throw Error("quantization digits must be in [0, 15]");
  if (value == kInf) return kInf;
  const double scale = std::pow(10.0, digits);
  const double q = std::round(value * scale) / scale;
  return q == 0.0 ? 0.0 : q;
}

Network read_network_csv(std::istream& in, const std::string& path,
                         std::optional<int> quantize_digits) {
  auto [labels, matrix] = read_labeled_square(in, path, ',', quantize_digits);
  return Network(std::move(labels), std::move(matrix));
}

std::string write_network_csv(const Network& net) {
  std::ostringstream out;
  const auto& labels = net.labels();
  for (const auto& label : labels) require_writable_label(label);
  for (size_t i = 0; i < labels.size(); ++i) out << (i ? "," : "") << labels[i];
  out << "\n";
  for (int i = 0; i < net.size(); ++i) {
    out << labels[i];
    for (int j = 0; j < net.size(); ++j) out << "," << format_value(net.at(i, j));
    out << "\n";
  }
  return out.str();
}

Network read_network_tsv(std::istream& in, const std::string& path,
                         std::optional<int> quantize_digits) {
  std::string line;
  int line_no = 0;
  std::vector<std::string> labels;
  std::map<std::string, int, std::less<>> index;
  struct Edge {
    int src;
    int dst;
    double weight;
    int line;
  };
  std::vector<Edge> parsed;
  auto node_id = [&](const std::string& label) {
    auto [it, inserted] = index.try_emplace(label, static_cast<int>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split(line, '\t', true);
    if (fields.size() != 3)
      throw IngestError(path, line_no, "expected src<TAB>dst<TAB>weight");
    const int src = node_id(fields[0]);
    const int dst = node_id(fields[1]);
    parsed.push_back({src, dst,
                      maybe_quantize(parse_value(fields[2], path, line_no), quantize_digits),
                      line_no});
  }
  if (labels.empty()) throw IngestError(path, line_no, "empty input");
  const int n = static_cast<int>(labels.size());
  SquareMatrix m(n, kInf);
  for (int i = 0; i < n; ++i) m(i, i) = 0.0;
  std::set<std::pair<int, int>> seen;
  for (const auto& e : parsed) {
    if (!seen.insert({e.src, e.dst}).second)
      throw IngestError(path, e.line, "duplicate ordered pair");
    m(e.src, e.dst) = e.weight;
  }
  return Network(std::move(labels), std::move(m));
}

FlowTable read_flow_csv(std::istream& in, const std::string& path) {
  auto [labels, matrix] = read_labeled_square(in, path, ',', std::nullopt);
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (labels[i] == labels[j]) throw IngestError(path, 1, "duplicate label '" + labels[i] + "'");
  return FlowTable{std::move(labels), std::move(matrix)};
}

FlowTransformResult transform_flow(const FlowTable& table, double floor) {
  const int n = table.flow.size();
  if (static_cast<int>(table.labels.size()) != n)
    throw DimensionMismatchError("flow table labels do not match matrix dimension");
  if (!(floor > 0.0)) throw Error("clamp floor must be positive");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double f = table.flow(i, j);
      if (!(f >= 0.0)) throw NegativeFlowError(i, j, f);
      if (f == kInf) throw Error("flow entries must be finite");
    }

  std::vector<std::string> warnings;
  SquareMatrix out(n);
  for (int j = 0; j < n; ++j) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += table.flow(i, j);
    if (total == 0.0) {
      if (n > 1)
        warnings.push_back("column '" + table.labels[j] +
                           "' has no inflow; its dissimilarities are +inf");
      for (int i = 0; i < n; ++i)
        if (i != j) out(i, j) = kInf;
      continue;
    }
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      const double ratio = table.flow(i, j) / total;
      double v = 1.0 - ratio;
      if (v == 0.0) {
        v = floor;
        warnings.push_back("'" + table.labels[i] + "' is the only inflow source of '" +
                           table.labels[j] + "'; dissimilarity clamped to " +
                           format_value(floor));
      }
      out(i, j) = v;
    }
  }
  return {Network(table.labels, std::move(out)), std::move(warnings)};
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::json resolution_to_json(double v) {
  return v == kInf ? nlohmann::json("inf") : nlohmann::json(v);
}

double resolution_from_json(const nlohmann::json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return kInf;
  if (j.is_number()) return j.get<double>();
  throw Error("resolution must be a number or \"inf\"");
}

}  // namespace

std::string dendrogram_to_json(const QuasiDendrogram& d, int indent) {
  nlohmann::json j;
  j["labels"] = d.labels();
  auto& merges = j["merges"] = nlohmann::json::array();
  for (const auto& m : d.merges()) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& block : m.members) {
      nlohmann::json names = nlohmann::json::array();
      for (int node : block) names.push_back(d.labels()[node]);
      members.push_back(std::move(names));
    }
    merges.push_back({{"delta", m.delta}, {"members", std::move(members)}});
  }
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const auto& e : d.edges())
    edges.push_back({{"delta", e.delta},
                     {"from_rep", d.labels()[e.from_rep]},
                     {"to_rep", d.labels()[e.to_rep]}});
  j["max_resolution"] = resolution_to_json(d.max_resolution());
  j["strongly_connected"] = d.strongly_connected();
  return j.dump(indent) + "\n";
}

QuasiDendrogram dendrogram_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid dendrogram JSON: ") + e.what());
  }
  try {
    std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
    std::map<std::string, int, std::less<>> index;
    for (size_t i = 0; i < labels.size(); ++i) index[labels[i]] = static_cast<int>(i);
    auto node_of = [&](const std::string& label) {
      auto it = index.find(label);
      if (it == index.end()) throw Error("unknown label '" + label + "'");
      return it->second;
    };
    std::vector<MergeEvent> merges;
    for (const auto& m : j.at("merges")) {
      MergeEvent event{m.at("delta").get<double>(), {}};
      for (const auto& block : m.at("members")) {
        std::vector<int> nodes;
        for (const auto& name : block) nodes.push_back(node_of(name.get<std::string>()));
        std::sort(nodes.begin(), nodes.end());
        event.members.push_back(std::move(nodes));
      }
      std::sort(event.members.begin(), event.members.end());
      merges.push_back(std::move(event));
    }
    std::vector<EdgeEvent> edges;
    for (const auto& e : j.at("edges"))
      edges.push_back({e.at("delta").get<double>(),
                       node_of(e.at("from_rep").get<std::string>()),
                       node_of(e.at("to_rep").get<std::string>())});
    return QuasiDendrogram(std::move(labels), std::move(merges), std::move(edges),
                           resolution_from_json(j.at("max_resolution")),
                           j.at("strongly_connected").get<bool>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid dendrogram JSON: ") + e.what());
  }
}

std::string partition_to_json(const QuasiPartition& p, const std::vector<std::string>& labels,
                              double delta, int indent) {
  nlohmann::json j;
  j["delta"] = delta;
  auto& blocks = j["blocks"] = nlohmann::json::array();
  for (const auto& block : p.blocks()) {
    nlohmann::json names = nlohmann::json::array();
    for (int node : block) names.push_back(labels[node]);
    blocks.push_back(std::move(names));
  }
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const auto& [from, to] : p.edges())
    edges.push_back({{"from_rep", labels[p.representative(from)]},
                     {"to_rep", labels[p.representative(to)]}});
  return j.dump(indent) + "\n";
}

// ---------------------------------------------------------------------------
// DOT

std::string partition_to_dot(const QuasiPartition& p, const std::vector<std::string>& labels,
                             bool reduced) {
  for (const auto& label : labels) require_writable_label(label);
  std::ostringstream out;
  out << "digraph quasi_partition {\n";
  out << "  compound=true;\n";
  out << "  node [shape=box];\n";
  for (int b = 0; b < p.block_count(); ++b) {
    out << "  subgraph cluster_" << b << " {\n";
    out << "    label=\"";
    const auto& block = p.blocks()[b];
    for (size_t i = 0; i < block.size(); ++i) out << (i ? ", " : "") << labels[block[i]];
    out << "\";\n";
    for (int node : block) out << "    \"" << labels[node] << "\";\n";
    out << "  }\n";
  }
  const auto arrows = reduced ? p.reduced_edges() : p.edges();
  for (const auto& [from, to] : arrows) {
    out << "  \"" << labels[p.representative(from)] << "\" -> \""
        << labels[p.representative(to)] << "\" [ltail=cluster_" << from << ", lhead=cluster_"
        << to << "];\n";
  }
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// pipeline

InputFormat input_format_from_path(const std::string& path) {
  auto ext = std::filesystem::path(path).extension().string();
  if (ext == ".tsv") return InputFormat::EdgeTsv;
  return InputFormat::MatrixCsv;
}

std::pair<Network, std::vector<std::string>> ingest(const RunConfig& cfg) {
  std::ifstream in(cfg.input_path);
  if (!in) throw IngestError(cfg.input_path, 0, "cannot open file");
  std::vector<std::string> warnings;
  std::optional<Network> net;
  switch (cfg.format) {
    case InputFormat::MatrixCsv:
      net = read_network_csv(in, cfg.input_path, cfg.quantize_digits);
      break;
    case InputFormat::EdgeTsv:
      net = read_network_tsv(in, cfg.input_path, cfg.quantize_digits);
      break;
    case InputFormat::FlowCsv: {
      FlowTable table = read_flow_csv(in, cfg.input_path);
      if (cfg.quantize_digits) {
        for (int i = 0; i < table.flow.size(); ++i)
          for (int j = 0; j < table.flow.size(); ++j)
            table.flow(i, j) = quantize(table.flow(i, j), *cfg.quantize_digits);
      }
      auto result = transform_flow(table);
      net = std::move(result.network);
      warnings = std::move(result.warnings);
      break;
    }
  }
  if (cfg.scale) net = scale_transform(*net, *cfg.scale);
  return {std::move(*net), std::move(warnings)};
}

namespace {

void write_artifact(const std::filesystem::path& path, const std::string& content,
                    RunSummary& summary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("failed writing " + path.string());
  summary.artifacts.push_back(path.string());
}

}  // namespace

RunSummary run_pipeline(const RunConfig& cfg) {
  for (double delta : cfg.deltas)
    if (!(delta >= 0.0) || delta == kInf) throw Error("cut resolutions must be finite and >= 0");
  if (cfg.oracle_cap < 1 || cfg.distance_cap < 1) throw Error("caps must be positive");

  auto [net, warnings] = ingest(cfg);
  RunSummary summary;
  summary.warnings = std::move(warnings);
  summary.node_count = net.size();
  summary.strongly_connected = net.strongly_connected();
  summary.separation = net.size() >= 2 ? separation(net) : kInf;

  const QuasiUltrametric u = dsl(net);
  const QuasiDendrogram d = upsilon(u);
  summary.max_resolution = d.max_resolution();
  for (const auto& m : d.merges())
    if (summary.merge_resolutions.empty() || summary.merge_resolutions.back() != m.delta)
      summary.merge_resolutions.push_back(m.delta);

  const bool writing = !cfg.output_dir.empty();
  std::filesystem::path dir(cfg.output_dir);
  if (writing) std::filesystem::create_directories(dir);

  if (writing && cfg.output == OutputFormat::Json)
    write_artifact(dir / "dendrogram.json", dendrogram_to_json(d), summary);
  if (writing && cfg.output == OutputFormat::Csv)
    write_artifact(dir / "ultrametric.csv", write_network_csv(u.network()), summary);

  for (double delta : cfg.deltas) {
    const QuasiPartition cut = cut_at(u, delta);
    summary.cuts.push_back(
        {delta, cut.block_count(), static_cast<int>(cut.edges().size())});
    if (!writing) continue;
    const std::string stem = "cut_" + format_value(delta);
    if (cfg.output == OutputFormat::Dot)
      write_artifact(dir / (stem + ".dot"),
                     partition_to_dot(cut, net.labels(), cfg.reduced_edges), summary);
    else if (cfg.output == OutputFormat::Json)
      write_artifact(dir / (stem + ".json"), partition_to_json(cut, net.labels(), delta),
                     summary);
  }
  return summary;
}

}  // namespace quasiclust
