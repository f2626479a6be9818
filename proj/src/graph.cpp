#include "gstate/graph.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "gstate/errors.hpp"

namespace gstate {

Graph::Graph(size_t n) : rows_(n, BitVec(n)) {
    labels_.reserve(n);
    for (size_t k = 0; k < n; k++) {
        labels_.push_back(std::to_string(k));
    }
    rebuild_index();
}

Graph Graph::make(size_t n, const std::vector<Edge> &edges, std::vector<std::string> labels) {
    Graph g(n);
    for (const auto &[u, v] : edges) {
        if (u >= n || v >= n) {
            throw InvalidInput(
                "edge (" + std::to_string(u) + ", " + std::to_string(v) + ") has an endpoint outside 0.." +
                std::to_string(n == 0 ? 0 : n - 1));
        }
        if (u == v) {
            throw InvalidInput("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") is a self-loop");
        }
        g.set_edge(u, v, true);
    }
    if (!labels.empty()) {
        return g.with_labels(std::move(labels));
    }
    return g;
}

size_t Graph::num_edges() const {
    size_t total = 0;
    for (const auto &r : rows_) {
        total += r.popcount();
    }
    return total / 2;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    for (size_t u = 0; u < rows_.size(); u++) {
        rows_[u].for_each_set([&](size_t v) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        });
    }
    return out;
}

std::optional<size_t> Graph::find(const std::string &label) const {
    auto it = index_.find(label);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

size_t Graph::index_of(const std::string &label) const {
    auto k = find(label);
    if (!k) {
        throw InvalidInput("no vertex labelled '" + label + "'");
    }
    return *k;
}

void Graph::set_edge(size_t u, size_t v, bool present) {
    if (u == v) {
        throw InvalidInput("self-loop at vertex " + std::to_string(u));
    }
    rows_[u].set(v, present);
    rows_[v].set(u, present);
}

void Graph::toggle_edge(size_t u, size_t v) {
    if (u == v) {
        throw InvalidInput("self-loop at vertex " + std::to_string(u));
    }
    rows_[u].flip(v);
    rows_[v].flip(u);
}

Graph Graph::induced(const BitVec &keep) const {
    std::vector<size_t> kept = keep.indices();
    Graph out;
    out.rows_.assign(kept.size(), BitVec(kept.size()));
    for (size_t i = 0; i < kept.size(); i++) {
        for (size_t j = i + 1; j < kept.size(); j++) {
            if (rows_[kept[i]].get(kept[j])) {
                out.rows_[i].set(j);
                out.rows_[j].set(i);
            }
        }
        out.labels_.push_back(labels_[kept[i]]);
    }
    out.rebuild_index();
    return out;
}

Graph Graph::with_labels(std::vector<std::string> labels) const {
    if (labels.size() != rows_.size()) {
        throw InvalidInput(
            "expected " + std::to_string(rows_.size()) + " labels, got " + std::to_string(labels.size()));
    }
    Graph out = *this;
    out.labels_ = std::move(labels);
    out.rebuild_index();
    if (out.index_.size() != out.labels_.size()) {
        throw InvalidInput("vertex labels are not unique");
    }
    return out;
}

void Graph::rebuild_index() {
    index_.clear();
    for (size_t k = 0; k < labels_.size(); k++) {
        index_.emplace(labels_[k], k);
    }
}

void Graph::validate() const {
    for (size_t u = 0; u < rows_.size(); u++) {
        if (rows_[u].get(u)) {
            throw std::logic_error("adjacency diagonal set at " + std::to_string(u));
        }
        rows_[u].for_each_set([&](size_t v) {
            if (!rows_[v].get(u)) {
                throw std::logic_error("adjacency not symmetric at " + std::to_string(u) + "," + std::to_string(v));
            }
        });
    }
    if (index_.size() != labels_.size()) {
        throw std::logic_error("duplicate vertex labels");
    }
}

Graph complement(const Graph &g) {
    size_t n = g.num_vertices();
    Graph out = g;
    for (size_t u = 0; u < n; u++) {
        for (size_t v = u + 1; v < n; v++) {
            out.toggle_edge(u, v);
        }
    }
    return out;
}

bool is_k_regular(const Graph &g, size_t k) {
    for (size_t v = 0; v < g.num_vertices(); v++) {
        if (g.degree(v) != k) {
            return false;
        }
    }
    return true;
}

Gf2Matrix cut_matrix(const Graph &g, const Bipartition &p) {
    size_t n = g.num_vertices();
    if (p.size() != n) {
        throw InvalidInput("bipartition size does not match the graph");
    }
    auto a = p.side_a.indices();
    auto b = p.side_b().indices();
    if (a.empty() || b.empty()) {
        throw InvalidInput("cut requires both sides to be nonempty");
    }
    Gf2Matrix m(a.size(), b.size());
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = 0; j < b.size(); j++) {
            if (g.has_edge(a[i], b[j])) {
                m.rows[i].set(j);
            }
        }
    }
    return m;
}

bool same_labelled_graph(const Graph &a, const Graph &b) {
    if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) {
        return false;
    }
    std::vector<size_t> to_b(a.num_vertices());
    for (size_t v = 0; v < a.num_vertices(); v++) {
        auto k = b.find(a.label(v));
        if (!k) {
            return false;
        }
        to_b[v] = *k;
    }
    for (const auto &[u, v] : a.edges()) {
        if (!b.has_edge(to_b[u], to_b[v])) {
            return false;
        }
    }
    return true;
}

Graph random_graph(size_t n, double p, uint64_t seed) {
    std::mt19937_64 rng(seed);
    Graph g(n);
    for (size_t u = 0; u < n; u++) {
        for (size_t v = u + 1; v < n; v++) {
            if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) {
                g.set_edge(u, v, true);
            }
        }
    }
    return g;
}

}  // namespace gstate
