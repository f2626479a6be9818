#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gstate/bitvec.hpp"
#include "gstate/gf2.hpp"

namespace gstate {

using Edge = std::pair<size_t, size_t>;

/// Simple undirected graph with bit-packed adjacency rows and one string
/// label per vertex. Vertex ids are always 0..n-1; labels are unique and
/// survive deletions of other vertices.
class Graph {
   public:
    Graph() = default;

    /// Graph on n vertices labelled "0".."n-1" with no edges.
    explicit Graph(size_t n);

    /// Throws InvalidInput on self-loops, out-of-range endpoints or bad labels.
    /// Repeated pairs collapse to one edge.
    static Graph make(size_t n, const std::vector<Edge> &edges, std::vector<std::string> labels = {});

    size_t num_vertices() const { return rows_.size(); }
    size_t num_edges() const;
    bool has_edge(size_t u, size_t v) const { return rows_[u].get(v); }
    size_t degree(size_t v) const { return rows_[v].popcount(); }
    const BitVec &row(size_t v) const { return rows_[v]; }
    std::vector<size_t> neighbors(size_t v) const { return rows_[v].indices(); }

    /// Edges (u, v) with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    const std::string &label(size_t v) const { return labels_[v]; }
    const std::vector<std::string> &labels() const { return labels_; }
    std::optional<size_t> find(const std::string &label) const;
    /// Like find, but throws InvalidInput when the label is absent.
    size_t index_of(const std::string &label) const;

    void set_edge(size_t u, size_t v, bool present);
    void toggle_edge(size_t u, size_t v);

    /// Subgraph induced by the vertices in keep, ids compacted in increasing order.
    Graph induced(const BitVec &keep) const;

    /// Copy with labels replaced; throws InvalidInput if the result is not unique.
    Graph with_labels(std::vector<std::string> labels) const;

    /// Checks symmetry and an empty diagonal; throws std::logic_error otherwise.
    void validate() const;

    bool operator==(const Graph &other) const { return rows_ == other.rows_ && labels_ == other.labels_; }

   private:
    void rebuild_index();

    std::vector<BitVec> rows_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, size_t> index_;
};

/// Two-sided split of the vertex set, stored as the mask of side A.
struct Bipartition {
    BitVec side_a;

    size_t size() const { return side_a.size(); }
    BitVec side_b() const { return ~side_a; }
    static Bipartition of(size_t n, const std::vector<size_t> &a) { return {BitVec::from_indices(n, a)}; }
};

Graph complement(const Graph &g);
bool is_k_regular(const Graph &g, size_t k);

/// |A| x |B| adjacency block with rows A and columns B, both in ascending id order.
/// Throws InvalidInput when either side is empty.
Gf2Matrix cut_matrix(const Graph &g, const Bipartition &p);

/// True when both graphs have the same label set and the same edges between labels,
/// regardless of id order.
bool same_labelled_graph(const Graph &a, const Graph &b);

/// Erdos-Renyi G(n, p), deterministic for a fixed seed.
Graph random_graph(size_t n, double p, uint64_t seed);

}  // namespace gstate
