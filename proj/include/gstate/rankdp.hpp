#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gstate/statevector.hpp"
#include "gstate/width.hpp"

namespace gstate {

/// Contraction plan for the graph-state amplitude sum
///
///     <f|G> = 2^{-n/2} sum_z prod_v f_v(z_v) (-1)^{#edges inside z}
///
/// along a rank decomposition. For the vertex set S below a tree edge, the
/// phase coupling between z_S and the rest depends on z_S only through the
/// combination of adjacency rows it selects, which lives in the row space of
/// the cut matrix. Each subtree therefore keeps one accumulator per point of
/// GF(2)^r (r = cut rank), expressed in a basis of rows of vertices in S.
///
/// The tree is rooted at the leaf of vertex 0, so every materialized table
/// belongs to a distinct tree edge.
class SignaturePlan {
   public:
    SignaturePlan(const Graph &g, const RankDecomposition &d);

    size_t num_vertices() const { return n_; }
    size_t width() const { return width_; }

    /// Sum over z in ({0,1}^n)^layers of prod_v weight(v, bits of v across layers)
    /// times the product of graph-state signs of every layer, without the
    /// 2^{-n/2} normalization. Layer l of vertex v is bit l of the weight index.
    cdouble contract(size_t layers, const std::function<cdouble(size_t, uint32_t)> &weight) const;

    struct Stats {
        size_t peak_live_accumulators = 0;
        size_t edge_table_bound = 0;  // sum over tree edges of 2^{layers * width(e)}
    };
    const Stats &last_stats() const { return stats_; }

   private:
    struct Node {
        std::vector<size_t> children;
        std::optional<size_t> vertex;
        std::vector<size_t> basis;               // vertices whose cut rows span the row space
        std::vector<std::vector<uint64_t>> lift;  // per child: child basis index -> parent coordinates
        std::vector<uint64_t> crossing;          // two children: rows over child0 basis, bits over child1 basis
    };

    void plan_node(size_t x, const Graph &g, const std::vector<BitVec> &below);

    size_t n_ = 0;
    size_t width_ = 0;
    size_t root_vertex_ = 0;
    size_t top_ = 0;                // tree node adjacent to the root leaf
    uint64_t root_coupling_ = 0;    // bits over top_'s basis: adjacency to the root vertex
    std::vector<Node> nodes_;
    std::vector<size_t> post_order_;
    std::vector<size_t> edge_ranks_;
    mutable Stats stats_;
};

cdouble amplitude_via_decomposition(const Graph &g, const RankDecomposition &d, const MeasurementFunctional &f);

double probability_via_decomposition(const Graph &g, const RankDecomposition &d, const LocalRotations &rotations,
                                     const std::vector<uint8_t> &x);

/// Probability that qubits 0..|prefix|-1 read prefix, by a doubled (bra/ket) contraction.
double marginal_probability(const Graph &g, const RankDecomposition &d, const LocalRotations &rotations,
                            const std::vector<uint8_t> &prefix);

/// Chain-rule sampler, qubit 0 first. Throws std::runtime_error if a conditional
/// denominator drops below 1e-300 after repeated resampling.
std::vector<std::vector<uint8_t>> sample_via_chain(const Graph &g, const RankDecomposition &d,
                                                   const LocalRotations &rotations, size_t count, uint64_t seed);

}  // namespace gstate
