#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quasiclust/dioid.hpp"
#include "quasiclust/distance.hpp"
#include "quasiclust/io.hpp"
#include "quasiclust/suites.hpp"

namespace {

using namespace quasiclust;

struct IngestOptions {
  std::string path;
  std::string format = "auto";
  int quantize_digits = -1;
  std::string scale;
};

void add_ingest_options(CLI::App* cmd, IngestOptions& opts) {
  cmd->add_option("input", opts.path, "input file")->required();
  cmd->add_option("--input-format", opts.format,
                  "matrix-csv | edge-tsv | flow-csv (default: by extension)")
      ->check(CLI::IsMember({"auto", "matrix-csv", "edge-tsv", "flow-csv"}));
  cmd->add_option("--quantize", opts.quantize_digits,
                  "round ingested values to this many decimal digits");
  cmd->add_option("--scale", opts.scale,
                  "entrywise change-of-scale spec, e.g. '2x', 'x^2', 'x+x^3'");
}

RunConfig base_config(const IngestOptions& opts) {
  RunConfig cfg;
  cfg.input_path = opts.path;
  if (opts.format == "auto")
    cfg.format = input_format_from_path(opts.path);
  else if (opts.format == "matrix-csv")
    cfg.format = InputFormat::MatrixCsv;
  else if (opts.format == "edge-tsv")
    cfg.format = InputFormat::EdgeTsv;
  else
    cfg.format = InputFormat::FlowCsv;
  if (opts.quantize_digits >= 0) cfg.quantize_digits = opts.quantize_digits;
  if (!opts.scale.empty()) cfg.scale = ScaleMap::parse(opts.scale);
  return cfg;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

void emit(const std::string& content, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw Error("cannot write " + output_path);
  out << content;
}

Network load_for_distance(const std::string& path) {
  RunConfig cfg;
  cfg.input_path = path;
  cfg.format = input_format_from_path(path);
  auto [net, warnings] = ingest(cfg);
  print_warnings(warnings);
  return net;
}

int run_cli(int argc, char** argv) {
  CLI::App app{
      "Directed single linkage quasi-clustering of asymmetric networks:\n"
      "quasi-ultrametrics, quasi-dendrograms, and influence DAGs."};
  app.require_subcommand(1);

  // validate
  IngestOptions validate_opts;
  auto* cmd_validate = app.add_subcommand("validate", "check a network file and print a summary");
  add_ingest_options(cmd_validate, validate_opts);

  // dsl
  IngestOptions dsl_opts;
  std::string dsl_output;
  auto* cmd_dsl = app.add_subcommand("dsl", "write the quasi-ultrametric as matrix CSV");
  add_ingest_options(cmd_dsl, dsl_opts);
  cmd_dsl->add_option("-o,--output", dsl_output, "output file (default: stdout)");

  // cut
  IngestOptions cut_opts;
  std::vector<double> cut_deltas;
  std::string cut_format = "dot";
  std::string cut_output_dir;
  bool cut_reduced = false;
  auto* cmd_cut = app.add_subcommand("cut", "quasi-partitions at the given resolutions");
  add_ingest_options(cmd_cut, cut_opts);
  cmd_cut->add_option("--delta", cut_deltas, "cut resolution (repeatable)")->required();
  cmd_cut->add_option("--format", cut_format, "artifact format")
      ->check(CLI::IsMember({"dot", "json"}));
  cmd_cut->add_option("--output-dir", cut_output_dir, "write artifacts here");
  cmd_cut->add_flag("--reduced", cut_reduced,
                    "draw transitively reduced arrows in DOT output");

  // dendrogram
  IngestOptions dendro_opts;
  std::string dendro_output;
  auto* cmd_dendro = app.add_subcommand("dendrogram", "write the quasi-dendrogram as JSON");
  add_ingest_options(cmd_dendro, dendro_opts);
  cmd_dendro->add_option("-o,--output", dendro_output, "output file (default: stdout)");

  // distance
  std::string distance_a;
  std::string distance_b;
  bool distance_exact = false;
  bool distance_upper = false;
  int distance_tries = 64;
  int distance_cap = 16;
  auto* cmd_distance = app.add_subcommand("distance", "network distance between two files");
  cmd_distance->add_option("fileA", distance_a, "first network")->required();
  cmd_distance->add_option("fileB", distance_b, "second network")->required();
  auto* flag_exact = cmd_distance->add_flag("--exact", distance_exact, "exact enumeration (default)");
  cmd_distance->add_flag("--upper", distance_upper, "sampled upper bound")->excludes(flag_exact);
  cmd_distance->add_option("--tries", distance_tries, "matchings sampled for --upper");
  cmd_distance->add_option("--cap", distance_cap, "cell cap for exact enumeration");

  // transform-flow
  IngestOptions flow_opts;
  std::string flow_output;
  auto* cmd_flow =
      app.add_subcommand("transform-flow", "turn a flow table into a dissimilarity network");
  add_ingest_options(cmd_flow, flow_opts);
  cmd_flow->add_option("-o,--output", flow_output, "output file (default: stdout)");

  // check-axioms
  std::uint64_t axioms_seed = 12345;
  int axioms_trials = 50;
  auto* cmd_axioms = app.add_subcommand("check-axioms", "run the randomized property suites");
  cmd_axioms->add_option("--seed", axioms_seed, "base seed");
  cmd_axioms->add_option("--trials", axioms_trials, "trials per suite");

  // export
  IngestOptions export_opts;
  std::string export_format;
  std::vector<double> export_deltas;
  std::string export_output_dir = "out";
  bool export_reduced = false;
  auto* cmd_export = app.add_subcommand("export", "run the pipeline and write artifacts");
  add_ingest_options(cmd_export, export_opts);
  cmd_export->add_option("--format", export_format, "dot | json")
      ->required()
      ->check(CLI::IsMember({"dot", "json"}));
  cmd_export->add_option("--delta", export_deltas, "cut resolution (repeatable)");
  cmd_export->add_option("--output-dir", export_output_dir, "artifact directory");
  cmd_export->add_flag("--reduced", export_reduced,
                       "draw transitively reduced arrows in DOT output");

  CLI11_PARSE(app, argc, argv);

  if (*cmd_validate) {
    auto [net, warnings] = ingest(base_config(validate_opts));
    print_warnings(warnings);
    std::cout << "nodes: " << net.size() << "\n";
    std::cout << "strongly_connected: " << (net.strongly_connected() ? "yes" : "no") << "\n";
    if (net.size() >= 2) std::cout << "separation: " << format_value(separation(net)) << "\n";
    std::cout << "ok\n";
    return 0;
  }

  if (*cmd_dsl) {
    auto [net, warnings] = ingest(base_config(dsl_opts));
    print_warnings(warnings);
    emit(write_network_csv(dsl(net).network()), dsl_output);
    return 0;
  }

  if (*cmd_cut) {
    RunConfig cfg = base_config(cut_opts);
    cfg.deltas = cut_deltas;
    cfg.output = cut_format == "dot" ? OutputFormat::Dot : OutputFormat::Json;
    cfg.reduced_edges = cut_reduced;
    cfg.output_dir = cut_output_dir;
    const RunSummary summary = run_pipeline(cfg);
    print_warnings(summary.warnings);
    for (const auto& cut : summary.cuts)
      std::cout << "delta " << format_value(cut.delta) << ": " << cut.block_count << " blocks, "
                << cut.edge_count << " edges\n";
    for (const auto& path : summary.artifacts) std::cout << "wrote " << path << "\n";
    return 0;
  }

  if (*cmd_dendro) {
    auto [net, warnings] = ingest(base_config(dendro_opts));
    print_warnings(warnings);
    emit(dendrogram_to_json(upsilon(dsl(net))), dendro_output);
    return 0;
  }

  if (*cmd_distance) {
    const Network a = load_for_distance(distance_a);
    const Network b = load_for_distance(distance_b);
    if (distance_upper) {
      std::cout << "upper_bound: " << format_value(network_distance_upper(a, b, distance_tries))
                << "\n";
    } else {
      std::cout << "distance: " << format_value(network_distance_exact(a, b, distance_cap))
                << "\n";
    }
    return 0;
  }

  if (*cmd_flow) {
    RunConfig cfg = base_config(flow_opts);
    cfg.format = InputFormat::FlowCsv;
    auto [net, warnings] = ingest(cfg);
    print_warnings(warnings);
    emit(write_network_csv(net), flow_output);
    return 0;
  }

  if (*cmd_axioms) {
    bool all_ok = true;
    for (const auto& result : run_all_suites(axioms_seed, axioms_trials)) {
      std::cout << result.name << ": " << result.passed << "/" << result.trials << "\n";
      for (const auto& failure : result.failures) std::cerr << "  " << failure << "\n";
      all_ok = all_ok && result.ok();
    }
    std::cout << (all_ok ? "all suites passed" : "FAILURES detected") << "\n";
    return all_ok ? 0 : 1;
  }

  if (*cmd_export) {
    RunConfig cfg = base_config(export_opts);
    cfg.deltas = export_deltas;
    cfg.output = export_format == "dot" ? OutputFormat::Dot : OutputFormat::Json;
    cfg.reduced_edges = export_reduced;
    cfg.output_dir = export_output_dir;
    const RunSummary summary = run_pipeline(cfg);
    print_warnings(summary.warnings);
    std::cout << "nodes: " << summary.node_count << "\n";
    std::cout << "strongly_connected: " << (summary.strongly_connected ? "yes" : "no") << "\n";
    std::cout << "max_resolution: " << format_value(summary.max_resolution) << "\n";
    std::cout << "merge_resolutions:";
    for (double delta : summary.merge_resolutions) std::cout << " " << format_value(delta);
    std::cout << "\n";
    for (const auto& cut : summary.cuts)
      std::cout << "delta " << format_value(cut.delta) << ": " << cut.block_count << " blocks, "
                << cut.edge_count << " edges\n";
    for (const auto& path : summary.artifacts) std::cout << "wrote " << path << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const quasiclust::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
