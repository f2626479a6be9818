#include "gstate/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gstate/errors.hpp"

namespace gstate {

namespace {

/// Parses a line of whitespace-separated non-negative integers.
std::vector<size_t> parse_integers(const std::string &line, size_t line_number) {
    std::vector<size_t> out;
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
        size_t pos = 0;
        unsigned long long value = 0;
        try {
            if (token.empty() || token[0] == '-' || token[0] == '+') {
                throw std::invalid_argument(token);
            }
            value = std::stoull(token, &pos);
        } catch (const std::exception &) {
            throw ParseError(line_number, "expected a non-negative integer, got '" + token + "'");
        }
        if (pos != token.size()) {
            throw ParseError(line_number, "expected a non-negative integer, got '" + token + "'");
        }
        out.push_back(static_cast<size_t>(value));
    }
    return out;
}

}  // namespace

Graph parse_edge_list(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    size_t line_number = 0;
    if (!std::getline(in, line)) {
        throw ParseError(1, "missing 'n m' header");
    }
    line_number++;
    auto header = parse_integers(line, line_number);
    if (header.size() != 2) {
        throw ParseError(line_number, "header must be 'n m'");
    }
    size_t n = header[0];
    size_t m = header[1];
    Graph g(n);
    size_t seen = 0;
    while (std::getline(in, line)) {
        line_number++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        auto values = parse_integers(line, line_number);
        if (values.empty()) {
            continue;
        }
        if (seen == m) {
            throw ParseError(line_number, "more edge lines than the header's m=" + std::to_string(m));
        }
        if (values.size() != 2) {
            throw ParseError(line_number, "edge line must be 'u v'");
        }
        auto [u, v] = std::make_pair(values[0], values[1]);
        if (u >= n || v >= n) {
            throw ParseError(line_number, "endpoint out of range for n=" + std::to_string(n));
        }
        if (u == v) {
            throw ParseError(line_number, "self-loop at vertex " + std::to_string(u));
        }
        g.set_edge(u, v, true);
        seen++;
    }
    if (seen != m) {
        throw ParseError(line_number, "expected " + std::to_string(m) + " edge lines, found " + std::to_string(seen));
    }
    return g;
}

std::string to_edge_list(const Graph &g) {
    std::ostringstream out;
    auto edges = g.edges();
    out << g.num_vertices() << " " << edges.size() << "\n";
    for (const auto &[u, v] : edges) {
        out << u << " " << v << "\n";
    }
    return out.str();
}

Graph graph_from_json(const nlohmann::json &j) {
    try {
        size_t n = j.at("n").get<size_t>();
        std::vector<Edge> edges;
        for (const auto &e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) {
                throw InvalidInput("each edge must be a pair [u, v]");
            }
            edges.emplace_back(e[0].get<size_t>(), e[1].get<size_t>());
        }
        std::vector<std::string> labels;
        if (j.contains("labels")) {
            labels = j.at("labels").get<std::vector<std::string>>();
        }
        return Graph::make(n, edges, std::move(labels));
    } catch (const nlohmann::json::exception &e) {
        throw InvalidInput(std::string("malformed graph JSON: ") + e.what());
    }
}

nlohmann::json graph_to_json(const Graph &g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto &[u, v] : g.edges()) {
        edges.push_back({u, v});
    }
    return {{"n", g.num_vertices()}, {"edges", edges}, {"labels", g.labels()}};
}

std::string to_dot(const Graph &g) {
    std::ostringstream out;
    out << "graph G {\n";
    for (size_t v = 0; v < g.num_vertices(); v++) {
        out << "  " << v << " [label=\"" << g.label(v) << "\"];\n";
    }
    for (const auto &[u, v] : g.edges()) {
        out << "  " << u << " -- " << v << ";\n";
    }
    out << "}\n";
    return out.str();
}

Graph parse_graph(const std::string &text) {
    size_t k = text.find_first_not_of(" \t\r\n");
    if (k != std::string::npos && text[k] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error &e) {
            throw InvalidInput(std::string("malformed graph JSON: ") + e.what());
        }
        return graph_from_json(j);
    }
    return parse_edge_list(text);
}

LocalRotations rotations_from_json(const nlohmann::json &j) {
    if (!j.is_array()) {
        throw InvalidInput("rotations must be a JSON array");
    }
    LocalRotations out;
    for (const auto &item : j) {
        try {
            Rotation r{item.at("theta").get<double>(), item.value("phi", 0.0)};
            if (!std::isfinite(r.theta) || !std::isfinite(r.phi)) {
                throw InvalidInput("rotation angles must be finite");
            }
            out.push_back(r);
        } catch (const nlohmann::json::exception &e) {
            throw InvalidInput(std::string("malformed rotation entry: ") + e.what());
        }
    }
    return out;
}

nlohmann::json rotations_to_json(const LocalRotations &rotations) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &r : rotations) {
        out.push_back({{"theta", r.theta}, {"phi", r.phi}});
    }
    return out;
}

RankDecomposition decomposition_from_json(const nlohmann::json &j, const Graph &g) {
    RankDecomposition d;
    try {
        size_t max_node = 0;
        bool any = false;
        for (const auto &e : j.at("tree")) {
            size_t a = e.at(0).get<size_t>();
            size_t b = e.at(1).get<size_t>();
            d.tree_edges.emplace_back(a, b);
            max_node = std::max({max_node, a, b});
            any = true;
        }
        std::vector<std::pair<size_t, size_t>> leaves;
        for (const auto &[key, value] : j.at("leaf_map").items()) {
            size_t node = std::stoul(key);
            leaves.emplace_back(node, g.index_of(value.get<std::string>()));
            max_node = std::max(max_node, node);
            any = true;
        }
        d.num_nodes = any ? max_node + 1 : 0;
        d.vertex_of_node.assign(d.num_nodes, std::nullopt);
        for (const auto &[node, v] : leaves) {
            d.vertex_of_node[node] = v;
        }
    } catch (const nlohmann::json::exception &e) {
        throw InvalidInput(std::string("malformed decomposition JSON: ") + e.what());
    } catch (const std::logic_error &e) {
        if (dynamic_cast<const InvalidInput *>(&e)) {
            throw;
        }
        throw InvalidInput(std::string("malformed decomposition JSON: ") + e.what());
    }
    validate_decomposition(d, g.num_vertices());
    compute_edge_widths(g, d);
    if (j.contains("widths")) {
        auto widths = j.at("widths").get<std::vector<size_t>>();
        if (widths != d.edge_widths) {
            throw InvalidInput("decomposition widths do not match the graph's cut ranks");
        }
    }
    return d;
}

nlohmann::json decomposition_to_json(const RankDecomposition &d, const Graph &g) {
    nlohmann::json tree = nlohmann::json::array();
    for (const auto &[a, b] : d.tree_edges) {
        tree.push_back({a, b});
    }
    nlohmann::json leaf_map = nlohmann::json::object();
    for (size_t x = 0; x < d.num_nodes; x++) {
        if (d.vertex_of_node[x]) {
            leaf_map[std::to_string(x)] = g.label(*d.vertex_of_node[x]);
        }
    }
    return {{"tree", tree}, {"leaf_map", leaf_map}, {"widths", d.edge_widths}};
}

nlohmann::json certificate_to_json(const ReductionCertificate &cert) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto &s : cert.steps) {
        steps.push_back({{"kind", to_string(s.kind)}, {"target", s.target}});
    }
    return {{"initial", graph_to_json(cert.initial)}, {"steps", steps}, {"final", graph_to_json(cert.final)}};
}

ReductionCertificate certificate_from_json(const nlohmann::json &j) {
    try {
        ReductionCertificate cert{graph_from_json(j.at("initial")), {}, graph_from_json(j.at("final"))};
        for (const auto &s : j.at("steps")) {
            cert.steps.push_back({parse_rewrite_kind(s.at("kind").get<std::string>()), s.at("target").get<std::string>()});
        }
        return cert;
    } catch (const nlohmann::json::exception &e) {
        throw InvalidInput(std::string("malformed certificate JSON: ") + e.what());
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << content;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace gstate
