#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "quasiclust/dioid.hpp"
#include "quasiclust/distance.hpp"
#include "quasiclust/io.hpp"
#include "quasiclust/suites.hpp"

namespace py = pybind11;
using namespace quasiclust;

namespace {

Network make_network(std::vector<std::string> labels, const std::vector<std::vector<double>>& rows) {
  return Network(std::move(labels), SquareMatrix::from_rows(rows));
}

std::set<std::pair<int, int>> edge_set(const std::vector<std::pair<int, int>>& edges) {
  return {edges.begin(), edges.end()};
}

void check_index(int value, int bound, const char* what) {
  if (value < 0 || value >= bound)
    throw Error(std::string(what) + " index out of range: " + std::to_string(value));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Directed single linkage quasi-clustering of asymmetric networks";

  py::register_exception<Error>(m, "QuasiclustError");

  py::class_<Network>(m, "Network")
      .def(py::init(&make_network), py::arg("labels"), py::arg("dissim"))
      .def_property_readonly("labels", &Network::labels)
      .def_property_readonly("strongly_connected", &Network::strongly_connected)
      .def("__len__", &Network::size)
      .def("matrix", [](const Network& n) { return n.dissim().rows(); })
      .def("at",
           [](const Network& n, int i, int j) {
             check_index(i, n.size(), "node");
             check_index(j, n.size(), "node");
             return n.at(i, j);
           },
           py::arg("i"), py::arg("j"))
      .def("__eq__", [](const Network& a, const Network& b) { return a == b; })
      .def("__repr__", [](const Network& n) {
        return "<Network of " + std::to_string(n.size()) + " nodes>";
      });

  py::class_<QuasiUltrametric>(m, "QuasiUltrametric")
      .def_property_readonly("network", &QuasiUltrametric::network)
      .def_property_readonly("labels", &QuasiUltrametric::labels)
      .def("__len__", &QuasiUltrametric::size)
      .def("matrix", [](const QuasiUltrametric& u) { return u.network().dissim().rows(); })
      .def("at",
           [](const QuasiUltrametric& u, int i, int j) {
             check_index(i, u.size(), "node");
             check_index(j, u.size(), "node");
             return u.at(i, j);
           },
           py::arg("i"), py::arg("j"))
      .def("__eq__",
           [](const QuasiUltrametric& a, const QuasiUltrametric& b) { return a == b; });

  py::class_<QuasiPartition>(m, "QuasiPartition")
      .def(py::init([](int n, std::vector<std::vector<int>> blocks,
                       const std::vector<std::pair<int, int>>& edges) {
             return QuasiPartition(n, std::move(blocks), edge_set(edges));
           }),
           py::arg("n"), py::arg("blocks"), py::arg("edges"))
      .def_property_readonly("blocks", &QuasiPartition::blocks)
      .def_property_readonly(
          "edges",
          [](const QuasiPartition& p) {
            return std::vector<std::pair<int, int>>(p.edges().begin(), p.edges().end());
          })
      .def("reduced_edges",
           [](const QuasiPartition& p) {
             auto reduced = p.reduced_edges();
             return std::vector<std::pair<int, int>>(reduced.begin(), reduced.end());
           })
      .def("block_of",
           [](const QuasiPartition& p, int node) {
             check_index(node, p.node_count(), "node");
             return p.block_of(node);
           },
           py::arg("node"))
      .def("representative",
           [](const QuasiPartition& p, int block) {
             check_index(block, p.block_count(), "block");
             return p.representative(block);
           },
           py::arg("block"))
      .def("__len__", &QuasiPartition::block_count)
      .def("__eq__", [](const QuasiPartition& a, const QuasiPartition& b) { return a == b; });

  py::class_<MergeEvent>(m, "MergeEvent")
      .def_readonly("delta", &MergeEvent::delta)
      .def_readonly("members", &MergeEvent::members);

  py::class_<EdgeEvent>(m, "EdgeEvent")
      .def_readonly("delta", &EdgeEvent::delta)
      .def_readonly("from_rep", &EdgeEvent::from_rep)
      .def_readonly("to_rep", &EdgeEvent::to_rep);

  py::class_<QuasiDendrogram>(m, "QuasiDendrogram")
      .def_property_readonly("labels", &QuasiDendrogram::labels)
      .def_property_readonly("merges", &QuasiDendrogram::merges)
      .def_property_readonly("edges", &QuasiDendrogram::edges)
      .def_property_readonly("max_resolution", &QuasiDendrogram::max_resolution)
      .def_property_readonly("strongly_connected", &QuasiDendrogram::strongly_connected)
      .def("partition_at", &QuasiDendrogram::partition_at, py::arg("delta"))
      .def("__eq__",
           [](const QuasiDendrogram& a, const QuasiDendrogram& b) { return a == b; });

  py::class_<InfluenceOrder>(m, "InfluenceOrder")
      .def(py::init<QuasiPartition>(), py::arg("partition"))
      .def("dominates",
           [](const InfluenceOrder& o, int bi, int bj) {
             check_index(bi, o.partition().block_count(), "block");
             check_index(bj, o.partition().block_count(), "block");
             return o.dominates(bi, bj);
           },
           py::arg("bi"), py::arg("bj"))
      .def("comparable",
           [](const InfluenceOrder& o, int bi, int bj) {
             check_index(bi, o.partition().block_count(), "block");
             check_index(bj, o.partition().block_count(), "block");
             return o.comparable(bi, bj);
           },
           py::arg("bi"), py::arg("bj"))
      .def("is_total_order", &InfluenceOrder::is_total_order);

  m.def("network_violations",
        [](const std::vector<std::string>& labels, const std::vector<std::vector<double>>& rows) {
          std::vector<std::string> out;
          for (const auto& v : Network::check(labels, SquareMatrix::from_rows(rows)))
            out.push_back(v.describe(labels));
          return out;
        },
        py::arg("labels"), py::arg("dissim"),
        "Every violated network invariant, as human-readable strings");
  m.def("certify_quasi_ultrametric",
        [](const Network& net) { return QuasiUltrametric::certify(net); }, py::arg("network"));
  m.def("separation", &separation, py::arg("network"));
  m.def("scale_transform",
        [](const Network& net, const std::string& spec) {
          return scale_transform(net, ScaleMap::parse(spec));
        },
        py::arg("network"), py::arg("spec"));
  m.def("metric_closure", &metric_closure, py::arg("network"));
  m.def("max_symmetrize", &max_symmetrize, py::arg("u"));

  m.def("dioid_product",
        [](const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
          return dioid_product(SquareMatrix::from_rows(a), SquareMatrix::from_rows(b)).rows();
        },
        py::arg("a"), py::arg("b"));
  m.def("dioid_power",
        [](const std::vector<std::vector<double>>& a, int k) {
          return dioid_power(SquareMatrix::from_rows(a), k).rows();
        },
        py::arg("a"), py::arg("k"));
  m.def("dsl", &dsl, py::arg("network"));
  m.def("chain_cost_oracle",
        [](const Network& net, int i, int j, std::optional<int> cap) {
          return chain_cost_oracle(net, i, j, cap.value_or(default_oracle_cap()));
        },
        py::arg("network"), py::arg("i"), py::arg("j"), py::arg("cap") = std::nullopt);

  m.def("cut_at", &cut_at, py::arg("u"), py::arg("delta"));
  m.def("upsilon", &upsilon, py::arg("u"));
  m.def("psi", &psi, py::arg("dendrogram"));

  m.def("distortion",
        [](const Network& a, const Network& b, const std::vector<std::pair<int, int>>& pairs) {
          return distortion(a, b, Correspondence{pairs});
        },
        py::arg("net_x"), py::arg("net_y"), py::arg("pairs"));
  m.def("network_distance_exact", &network_distance_exact, py::arg("net_x"), py::arg("net_y"),
        py::arg("cell_cap") = 16);
  m.def("network_distance_upper", &network_distance_upper, py::arg("net_x"), py::arg("net_y"),
        py::arg("tries") = 64, py::arg("seed") = 0);
  m.def("stability_check",
        [](const Network& a, const Network& b, int cap) {
          const auto r = stability_check(a, b, cap);
          return py::make_tuple(r.pass, r.output_distance, r.input_distance);
        },
        py::arg("net_x"), py::arg("net_y"), py::arg("cell_cap") = 16);

  m.def("transform_flow",
        [](const std::vector<std::string>& labels, const std::vector<std::vector<double>>& rows,
           double floor) {
          auto result = transform_flow(FlowTable{labels, SquareMatrix::from_rows(rows)}, floor);
          return py::make_tuple(std::move(result.network), std::move(result.warnings));
        },
        py::arg("labels"), py::arg("flow"), py::arg("floor") = 1e-12);

  m.def("dendrogram_to_json", &dendrogram_to_json, py::arg("dendrogram"), py::arg("indent") = 2);
  m.def("dendrogram_from_json", &dendrogram_from_json, py::arg("text"));
  m.def("partition_to_dot", &partition_to_dot, py::arg("partition"), py::arg("labels"),
        py::arg("reduced") = true);
  m.def("partition_to_json", &partition_to_json, py::arg("partition"), py::arg("labels"),
        py::arg("delta"), py::arg("indent") = 2);
}
