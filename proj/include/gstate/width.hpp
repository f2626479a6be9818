#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gstate/graph.hpp"

namespace gstate {

inline constexpr size_t kDefaultExactLimit = 16;

/// GF(2) rank of the adjacency block between subset and its complement.
/// Throws InvalidInput when subset is empty or the whole vertex set.
size_t cut_rank(const Graph &g, const BitVec &subset);

/// Unrooted tree whose leaves are in bijection with the graph's vertices.
/// Internal nodes have degree at most 3.
struct RankDecomposition {
    size_t num_nodes = 0;
    std::vector<std::pair<size_t, size_t>> tree_edges;
    std::vector<std::optional<size_t>> vertex_of_node;
    std::vector<size_t> edge_widths;

    /// Max of edge_widths; 0 for a tree without edges.
    size_t width() const;

    /// Vertices on the `a` side of tree edge e (the side containing tree_edges[e].first).
    BitVec side(size_t e, size_t num_vertices) const;
};

/// Throws InvalidInput if d is not a rank decomposition of a graph on n vertices.
void validate_decomposition(const RankDecomposition &d, size_t n);

/// Recomputes edge_widths from the graph.
void compute_edge_widths(const Graph &g, RankDecomposition &d);

/// Caterpillar decomposition following the given vertex order.
RankDecomposition linear_decomposition(const Graph &g, const std::vector<size_t> &order);

struct WidthReport {
    size_t value = 0;
    RankDecomposition decomposition;
    bool exact = false;
};

/// Optimal rank width by dynamic programming over subsets with a witness tree.
/// Throws InvalidInput above exact_limit (max 30).
WidthReport exact_rank_width(const Graph &g, size_t exact_limit = kDefaultExactLimit);

/// Upper-bound witness. Effort 0: greedy recursive bisection. Effort 1: plus leaf-swap
/// descent. Effort 2: plus seeded restarts. Deterministic for fixed (effort, seed).
WidthReport heuristic_rank_decomposition(const Graph &g, int effort = 1, uint64_t seed = 0);

/// Rank width reported as entanglement width (bits): exact DP when n <= exact_limit,
/// heuristic upper bound otherwise.
WidthReport entanglement_width(const Graph &g, size_t exact_limit = kDefaultExactLimit, int effort = 2,
                               uint64_t seed = 0);

}  // namespace gstate
