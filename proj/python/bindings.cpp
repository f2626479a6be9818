#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numbers>

#include "gstate/cli.hpp"
#include "gstate/complete_fast.hpp"
#include "gstate/constructions.hpp"
#include "gstate/errors.hpp"
#include "gstate/io.hpp"
#include "gstate/rankdp.hpp"
#include "gstate/statevector.hpp"
#include "gstate/transform.hpp"
#include "gstate/width.hpp"

namespace py = pybind11;
using namespace gstate;

namespace {

LocalRotations to_rotations(const std::optional<std::vector<std::pair<double, double>>> &rot, size_t n) {
    if (!rot) {
        return LocalRotations(n);
    }
    LocalRotations out;
    for (auto [theta, phi] : *rot) {
        out.push_back({theta, phi});
    }
    if (out.size() != n) {
        throw InvalidInput("expected " + std::to_string(n) + " rotations, got " + std::to_string(out.size()));
    }
    return out;
}

std::vector<std::string> outcome_strings(const std::vector<std::vector<uint8_t>> &draws) {
    std::vector<std::string> out;
    out.reserve(draws.size());
    for (const auto &d : draws) {
        out.push_back(outcome_string(d));
    }
    return out;
}

py::dict certificate_dict(const ReductionCertificate &cert) {
    py::list steps;
    for (const auto &s : cert.steps) {
        steps.append(py::make_tuple(to_string(s.kind), s.target));
    }
    py::dict d;
    d["initial"] = cert.initial;
    d["final"] = cert.final;
    d["steps"] = steps;
    d["replay_ok"] = replay_matches(cert);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "graph-state construction, simulation and rank width";

    py::class_<Graph>(m, "Graph")
        .def(py::init<size_t>(), py::arg("n") = 0)
        .def(py::init([](size_t n, const std::vector<Edge> &edges, std::vector<std::string> labels) {
                 return Graph::make(n, edges, std::move(labels));
             }),
             py::arg("n"), py::arg("edges"), py::arg("labels") = std::vector<std::string>{})
        .def_static("from_text", &parse_graph, "parse an edge list or JSON graph")
        .def_property_readonly("num_vertices", &Graph::num_vertices)
        .def_property_readonly("num_edges", &Graph::num_edges)
        .def_property_readonly("labels", &Graph::labels)
        .def("edges", &Graph::edges)
        .def("has_edge", &Graph::has_edge)
        .def("degree", &Graph::degree)
        .def("neighbors", &Graph::neighbors)
        .def("index_of", &Graph::index_of)
        .def("to_json", [](const Graph &g) { return graph_to_json(g).dump(); })
        .def("to_edge_list", &to_edge_list)
        .def("to_dot", &to_dot)
        .def("__eq__", &Graph::operator==)
        .def("__len__", &Graph::num_vertices)
        .def("__repr__", [](const Graph &g) {
            return "Graph(n=" + std::to_string(g.num_vertices()) + ", m=" + std::to_string(g.num_edges()) + ")";
        });

    m.def("random_graph", &random_graph, py::arg("n"), py::arg("p"), py::arg("seed"));
    m.def("complement", &complement);
    m.def("is_k_regular", &is_k_regular);
    m.def("local_complement", py::overload_cast<const Graph &, size_t>(&local_complement));
    m.def("local_complement", py::overload_cast<const Graph &, const std::string &>(&local_complement));
    m.def("delete_vertex", py::overload_cast<const Graph &, size_t>(&delete_vertex));
    m.def("delete_vertex", py::overload_cast<const Graph &, const std::string &>(&delete_vertex));

    m.def("build_regular_easy", &build_regular_easy, py::arg("n"), py::arg("k"));
    m.def(
        "build_lattice",
        [](size_t rows, size_t cols, const std::string &kind, bool torus) {
            if (kind != "square" && kind != "hexagonal") {
                throw InvalidInput("kind must be 'square' or 'hexagonal'");
            }
            return build_lattice({rows, cols, kind == "square" ? LatticeKind::Square : LatticeKind::Hexagonal,
                                  torus ? Boundary::Torus : Boundary::Open});
        },
        py::arg("rows"), py::arg("cols"), py::arg("kind") = "square", py::arg("torus") = true);
    m.def("build_double_torus", &build_double_torus, py::arg("m"), py::arg("k"));
    m.def("build_hard_family", py::overload_cast<size_t, size_t>(&build_hard_family), py::arg("n"), py::arg("k"));
    m.def(
        "gale_ryser_check",
        [](std::vector<size_t> a, std::vector<size_t> b) { return gale_ryser_check({std::move(a), std::move(b)}); },
        py::arg("a"), py::arg("b"));
    m.def(
        "ryser_realize",
        [](std::vector<size_t> a, std::vector<size_t> b) { return ryser_realize({std::move(a), std::move(b)}); },
        py::arg("a"), py::arg("b"));

    m.def(
        "duality_reduction", [](size_t mm) {
            auto cert = duality_reduction(mm);
            auto d = certificate_dict(cert);
            d["matches_expected"] = same_labelled_graph(cert.final, duality_expected(mm));
            return d;
        },
        py::arg("m"));
    m.def("hard_family_reduction", [](const Graph &g) {
        auto red = hard_family_reduction(g);
        auto d = certificate_dict(red.certificate);
        d["expected"] = red.expected;
        d["matches_expected"] = red.matches();
        return d;
    });

    m.def(
        "probability",
        [](const Graph &g, const std::string &x, std::optional<std::vector<std::pair<double, double>>> rot,
           double edge_phase, size_t oracle_limit) {
            auto bits = parse_outcome(x);
            auto f = functional_from_rotations(to_rotations(rot, g.num_vertices()), bits);
            return std::norm(amplitude(g, f, oracle_limit, edge_phase));
        },
        py::arg("graph"), py::arg("x"), py::arg("rotations") = py::none(), py::arg("edge_phase") = std::numbers::pi,
        py::arg("oracle_limit") = kDefaultOracleLimit, "dense statevector probability of outcome x (qubit 0 first)");
    m.def(
        "probability_complete",
        [](const std::string &x, std::optional<std::vector<std::pair<double, double>>> rot, double edge_phase) {
            auto bits = parse_outcome(x);
            return probability_complete(to_rotations(rot, bits.size()), bits, edge_phase);
        },
        py::arg("x"), py::arg("rotations") = py::none(), py::arg("edge_phase") = std::numbers::pi);
    m.def(
        "probability_rankdp",
        [](const Graph &g, const std::string &x, std::optional<std::vector<std::pair<double, double>>> rot,
           int effort, uint64_t seed) {
            auto d = heuristic_rank_decomposition(g, effort, seed).decomposition;
            return probability_via_decomposition(g, d, to_rotations(rot, g.num_vertices()), parse_outcome(x));
        },
        py::arg("graph"), py::arg("x"), py::arg("rotations") = py::none(), py::arg("effort") = 2,
        py::arg("seed") = 0);
    m.def(
        "sample",
        [](const Graph &g, size_t count, uint64_t seed, std::optional<std::vector<std::pair<double, double>>> rot) {
            return outcome_strings(sample(g, to_rotations(rot, g.num_vertices()), count, seed));
        },
        py::arg("graph"), py::arg("count"), py::arg("seed"), py::arg("rotations") = py::none());
    m.def(
        "sample_rankdp",
        [](const Graph &g, size_t count, uint64_t seed, std::optional<std::vector<std::pair<double, double>>> rot) {
            auto d = heuristic_rank_decomposition(g, 2, seed).decomposition;
            return outcome_strings(sample_via_chain(g, d, to_rotations(rot, g.num_vertices()), count, seed));
        },
        py::arg("graph"), py::arg("count"), py::arg("seed"), py::arg("rotations") = py::none());
    m.def(
        "entanglement_entropy",
        [](const Graph &g, const std::vector<size_t> &side_a) {
            return entanglement_entropy(g, Bipartition::of(g.num_vertices(), side_a));
        },
        py::arg("graph"), py::arg("side_a"));
    m.def(
        "cut_rank",
        [](const Graph &g, const std::vector<size_t> &side_a) {
            return cut_rank(g, BitVec::from_indices(g.num_vertices(), side_a));
        },
        py::arg("graph"), py::arg("side_a"));

    py::class_<WidthReport>(m, "WidthReport")
        .def_readonly("value", &WidthReport::value)
        .def_readonly("exact", &WidthReport::exact)
        .def_property_readonly("edge_widths", [](const WidthReport &r) { return r.decomposition.edge_widths; })
        .def("__repr__", [](const WidthReport &r) {
            return "WidthReport(value=" + std::to_string(r.value) + ", exact=" + (r.exact ? "True" : "False") + ")";
        });
    m.def("exact_rank_width", &exact_rank_width, py::arg("graph"), py::arg("exact_limit") = kDefaultExactLimit);
    m.def("heuristic_rank_width", &heuristic_rank_decomposition, py::arg("graph"), py::arg("effort") = 1,
          py::arg("seed") = 0);
    m.def("entanglement_width", &entanglement_width, py::arg("graph"), py::arg("exact_limit") = kDefaultExactLimit,
          py::arg("effort") = 2, py::arg("seed") = 0);

    m.def(
        "phase_scan",
        [](size_t n, size_t k_min, size_t k_max, size_t exact_limit, int effort, uint64_t seed) {
            py::list out;
            for (const auto &r : phase_scan(n, k_min, k_max ? k_max : n - 1, exact_limit, effort, seed)) {
                py::dict row;
                row["k"] = r.k;
                row["n"] = r.n;
                row["family"] = r.family;
                row["width"] = r.width ? py::cast(*r.width) : py::none();
                row["exact"] = r.exact;
                out.append(row);
            }
            return out;
        },
        py::arg("n"), py::arg("k_min") = 1, py::arg("k_max") = 0, py::arg("exact_limit") = kDefaultExactLimit,
        py::arg("effort") = 2, py::arg("seed") = 0);
}
