#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "gstate/graph.hpp"
#include "gstate/statevector.hpp"
#include "gstate/transform.hpp"
#include "gstate/width.hpp"

namespace gstate {

/// "n m" header followed by m lines "u v". Throws ParseError with a 1-based line number.
Graph parse_edge_list(const std::string &text);
std::string to_edge_list(const Graph &g);

/// {"n": int, "edges": [[u, v], ...], "labels": [...]} with labels optional on input.
Graph graph_from_json(const nlohmann::json &j);
nlohmann::json graph_to_json(const Graph &g);

/// Export only.
std::string to_dot(const Graph &g);

/// Picks JSON when the first non-space character is '{', edge list otherwise.
Graph parse_graph(const std::string &text);

/// [{"theta": float, "phi": float}, ...]
LocalRotations rotations_from_json(const nlohmann::json &j);
nlohmann::json rotations_to_json(const LocalRotations &rotations);

/// {"tree": [[a, b], ...], "leaf_map": {"<node>": "<vertex label>"}, "widths": [...]}
RankDecomposition decomposition_from_json(const nlohmann::json &j, const Graph &g);
nlohmann::json decomposition_to_json(const RankDecomposition &d, const Graph &g);

/// {"initial": graph, "steps": [{"kind": "lc" | "delete", "target": label}], "final": graph}
nlohmann::json certificate_to_json(const ReductionCertificate &cert);
ReductionCertificate certificate_from_json(const nlohmann::json &j);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &content);

/// printf("%.17g").
std::string format_double(double x);

}  // namespace gstate
