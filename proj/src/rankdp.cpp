#include "gstate/rankdp.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "gstate/errors.hpp"

namespace gstate {

namespace {

constexpr size_t kMaxSignatureBits = 30;

bool parity(uint64_t x) { return std::popcount(x) & 1; }

/// Applies a per-layer linear map (given by the images of the single-layer basis
/// vectors) to every layered index of a table with `in_bits` bits per layer.
std::vector<uint64_t> layered_images(const std::vector<uint64_t> &images, size_t in_bits, size_t out_bits,
                                     size_t layers) {
    std::vector<uint64_t> single(size_t{1} << in_bits, 0);
    for (size_t s = 1; s < single.size(); s++) {
        size_t low = std::countr_zero(s);
        single[s] = single[s & (s - 1)] ^ images[low];
    }
    size_t total_bits = in_bits * layers;
    std::vector<uint64_t> out(size_t{1} << total_bits, 0);
    uint64_t mask = (uint64_t{1} << in_bits) - 1;
    for (uint64_t idx = 0; idx < out.size(); idx++) {
        uint64_t acc = 0;
        for (size_t l = 0; l < layers; l++) {
            acc |= single[(idx >> (l * in_bits)) & mask] << (l * out_bits);
        }
        out[idx] = acc;
    }
    return out;
}

}  // namespace

SignaturePlan::SignaturePlan(const Graph &g, const RankDecomposition &d) : n_(g.num_vertices()) {
    validate_decomposition(d, n_);
    if (n_ <= 1) {
        return;
    }
    nodes_.resize(d.num_nodes);
    std::vector<std::vector<size_t>> adj(d.num_nodes);
    for (const auto &[a, b] : d.tree_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    size_t root_leaf = 0;
    for (size_t x = 0; x < d.num_nodes; x++) {
        nodes_[x].vertex = d.vertex_of_node[x];
        if (d.vertex_of_node[x] == size_t{0}) {
            root_leaf = x;
        }
    }
    root_vertex_ = 0;
    top_ = adj[root_leaf].front();

    // Orient away from the root leaf; record a post-order.
    std::vector<size_t> parent(d.num_nodes, SIZE_MAX);
    std::vector<size_t> pre;
    std::vector<size_t> stack{top_};
    parent[top_] = root_leaf;
    while (!stack.empty()) {
        size_t x = stack.back();
        stack.pop_back();
        pre.push_back(x);
        for (size_t y : adj[x]) {
            if (y != parent[x]) {
                parent[y] = x;
                nodes_[x].children.push_back(y);
                stack.push_back(y);
            }
        }
    }
    post_order_.assign(pre.rbegin(), pre.rend());

    std::vector<BitVec> below(d.num_nodes, BitVec(n_));
    edge_ranks_.assign(d.num_nodes, 0);
    for (size_t x : post_order_) {
        if (nodes_[x].vertex) {
            below[x].set(*nodes_[x].vertex);
        }
        for (size_t c : nodes_[x].children) {
            below[x] |= below[c];
        }
        plan_node(x, g, below);
    }

    const auto &top_basis = nodes_[top_].basis;
    for (size_t j = 0; j < top_basis.size(); j++) {
        if (g.has_edge(top_basis[j], root_vertex_)) {
            root_coupling_ |= uint64_t{1} << j;
        }
    }
}

void SignaturePlan::plan_node(size_t x, const Graph &g, const std::vector<BitVec> &below) {
    Node &node = nodes_[x];
    const BitVec &inside = below[x];
    BitVec outside = ~inside;
    Gf2Basis basis(n_);
    inside.for_each_set([&](size_t v) {
        if (basis.insert(g.row(v) & outside)) {
            node.basis.push_back(v);
        }
    });
    if (node.basis.size() > kMaxSignatureBits) {
        throw InvalidInput("decomposition edge of cut rank " + std::to_string(node.basis.size()) +
                           " is too wide for the signature contraction (max " + std::to_string(kMaxSignatureBits) +
                           ")");
    }
    edge_ranks_[x] = node.basis.size();
    width_ = std::max(width_, node.basis.size());

    for (size_t c : node.children) {
        std::vector<uint64_t> lift;
        for (size_t v : nodes_[c].basis) {
            auto coords = basis.coordinates(g.row(v) & outside);
            if (!coords) {
                throw std::logic_error("child cut row outside the parent row space");
            }
            lift.push_back(*coords);
        }
        node.lift.push_back(std::move(lift));
    }
    if (node.children.size() == 2) {
        const auto &b0 = nodes_[node.children[0]].basis;
        const auto &b1 = nodes_[node.children[1]].basis;
        node.crossing.assign(b0.size(), 0);
        for (size_t i = 0; i < b0.size(); i++) {
            for (size_t j = 0; j < b1.size(); j++) {
                if (g.has_edge(b0[i], b1[j])) {
                    node.crossing[i] |= uint64_t{1} << j;
                }
            }
        }
    } else if (node.children.size() > 2) {
        throw InvalidInput("decomposition has an internal node of degree above 3");
    }
}

cdouble SignaturePlan::contract(size_t layers, const std::function<cdouble(size_t, uint32_t)> &weight) const {
    if (layers == 0 || layers > 4) {
        throw InvalidInput("contraction supports 1 to 4 layers");
    }
    stats_ = {};
    const uint32_t layer_states = uint32_t{1} << layers;
    if (n_ == 0) {
        return 1;
    }
    if (n_ == 1) {
        cdouble acc = 0;
        for (uint32_t z = 0; z < layer_states; z++) {
            acc += weight(0, z);
        }
        return acc;
    }
    for (size_t x : post_order_) {
        stats_.edge_table_bound += size_t{1} << (layers * edge_ranks_[x]);
    }

    std::vector<std::vector<cdouble>> tables(nodes_.size());
    size_t live = 0;
    auto track = [&](long delta) {
        live = static_cast<size_t>(static_cast<long>(live) + delta);
        stats_.peak_live_accumulators = std::max(stats_.peak_live_accumulators, live);
    };

    for (size_t x : post_order_) {
        const Node &node = nodes_[x];
        size_t r = node.basis.size();
        std::vector<cdouble> table(size_t{1} << (layers * r), cdouble(0));
        track(static_cast<long>(table.size()));

        if (node.vertex) {
            for (uint32_t z = 0; z < layer_states; z++) {
                table[r == 1 ? z : 0] += weight(*node.vertex, z);
            }
        } else if (node.children.size() == 1) {
            size_t c = node.children[0];
            auto lin = layered_images(node.lift[0], nodes_[c].basis.size(), r, layers);
            const auto &child = tables[c];
            for (size_t idx = 0; idx < child.size(); idx++) {
                table[lin[idx]] += child[idx];
            }
        } else {
            size_t c0 = node.children[0];
            size_t c1 = node.children[1];
            size_t r0 = nodes_[c0].basis.size();
            size_t r1 = nodes_[c1].basis.size();
            auto lin0 = layered_images(node.lift[0], r0, r, layers);
            auto lin1 = layered_images(node.lift[1], r1, r, layers);
            // Column k of the crossing matrix as a mask over child 0's basis.
            std::vector<uint64_t> columns(r1, 0);
            for (size_t i = 0; i < r0; i++) {
                for (size_t k = 0; k < r1; k++) {
                    if ((node.crossing[i] >> k) & 1) {
                        columns[k] |= uint64_t{1} << i;
                    }
                }
            }
            auto coupling = layered_images(columns, r1, r0, layers);
            const auto &t0 = tables[c0];
            const auto &t1 = tables[c1];
            for (size_t i1 = 0; i1 < t1.size(); i1++) {
                cdouble w1 = t1[i1];
                if (w1 == cdouble(0)) {
                    continue;
                }
                uint64_t k = coupling[i1];
                uint64_t l1 = lin1[i1];
                for (size_t i0 = 0; i0 < t0.size(); i0++) {
                    cdouble term = t0[i0] * w1;
                    table[lin0[i0] ^ l1] += parity(i0 & k) ? -term : term;
                }
            }
        }
        for (size_t c : node.children) {
            track(-static_cast<long>(tables[c].size()));
            tables[c] = {};
        }
        tables[x] = std::move(table);
    }

    // Close the tree with the root leaf.
    const auto &top = tables[top_];
    size_t rt = nodes_[top_].basis.size();
    uint64_t chunk = (uint64_t{1} << rt) - 1;
    cdouble result = 0;
    for (uint32_t z = 0; z < layer_states; z++) {
        cdouble acc = 0;
        for (uint64_t idx = 0; idx < top.size(); idx++) {
            bool sign = false;
            for (size_t l = 0; l < layers; l++) {
                if ((z >> l) & 1) {
                    sign ^= parity((idx >> (l * rt)) & chunk & root_coupling_);
                }
            }
            acc += sign ? -top[idx] : top[idx];
        }
        result += weight(root_vertex_, z) * acc;
    }
    return result;
}

cdouble amplitude_via_decomposition(const Graph &g, const RankDecomposition &d, const MeasurementFunctional &f) {
    if (f.size() != g.num_vertices()) {
        throw InvalidInput("functional has " + std::to_string(f.size()) + " entries but the graph has " +
                           std::to_string(g.num_vertices()) + " vertices");
    }
    SignaturePlan plan(g, d);
    cdouble raw = plan.contract(1, [&](size_t v, uint32_t z) { return f[v][z]; });
    return raw * std::pow(2.0, -0.5 * static_cast<double>(g.num_vertices()));
}

double probability_via_decomposition(const Graph &g, const RankDecomposition &d, const LocalRotations &rotations,
                                     const std::vector<uint8_t> &x) {
    if (rotations.size() != g.num_vertices()) {
        throw InvalidInput("rotations do not match the number of vertices");
    }
    return std::norm(amplitude_via_decomposition(g, d, functional_from_rotations(rotations, x)));
}

namespace {

double marginal_with_plan(const SignaturePlan &plan, const std::vector<Mat2> &unitaries,
                          const std::vector<uint8_t> &prefix) {
    size_t n = plan.num_vertices();
    cdouble raw = plan.contract(2, [&](size_t v, uint32_t zz) -> cdouble {
        uint32_t ket = zz & 1;
        uint32_t bra = (zz >> 1) & 1;
        if (v < prefix.size()) {
            const auto &row = unitaries[v][prefix[v]];
            return std::conj(row[ket]) * row[bra];
        }
        return ket == bra ? 1.0 : 0.0;
    });
    return raw.real() * std::pow(2.0, -static_cast<double>(n));
}

std::vector<Mat2> unitaries_of(const LocalRotations &rotations) {
    std::vector<Mat2> out;
    out.reserve(rotations.size());
    for (const auto &r : rotations) {
        out.push_back(r.matrix());
    }
    return out;
}

}  // namespace

double marginal_probability(const Graph &g, const RankDecomposition &d, const LocalRotations &rotations,
                            const std::vector<uint8_t> &prefix) {
    if (rotations.size() != g.num_vertices()) {
        throw InvalidInput("rotations do not match the number of vertices");
    }
    if (prefix.size() > g.num_vertices()) {
        throw InvalidInput("prefix is longer than the number of qubits");
    }
    if (prefix.empty()) {
        return 1.0;
    }
    SignaturePlan plan(g, d);
    return marginal_with_plan(plan, unitaries_of(rotations), prefix);
}

std::vector<std::vector<uint8_t>> sample_via_chain(const Graph &g, const RankDecomposition &d,
                                                   const LocalRotations &rotations, size_t count, uint64_t seed) {
    size_t n = g.num_vertices();
    if (rotations.size() != n) {
        throw InvalidInput("rotations do not match the number of vertices");
    }
    SignaturePlan plan(g, d);
    auto unitaries = unitaries_of(rotations);
    std::unordered_map<std::string, double> memo;
    auto marginal = [&](const std::vector<uint8_t> &prefix) {
        if (prefix.empty()) {
            return 1.0;
        }
        std::string key = outcome_string(prefix);
        auto it = memo.find(key);
        if (it != memo.end()) {
            return it->second;
        }
        double p = marginal_with_plan(plan, unitaries, prefix);
        memo.emplace(std::move(key), p);
        return p;
    };

    constexpr int kMaxAttempts = 100;
    std::mt19937_64 rng(seed);
    std::vector<std::vector<uint8_t>> out;
    out.reserve(count);
    for (size_t t = 0; t < count; t++) {
        bool done = false;
        for (int attempt = 0; attempt < kMaxAttempts && !done; attempt++) {
            std::vector<uint8_t> prefix;
            double p_prefix = 1.0;
            done = true;
            for (size_t q = 0; q < n; q++) {
                if (p_prefix < 1e-300) {
                    done = false;
                    break;
                }
                prefix.push_back(0);
                double p0 = std::max(0.0, marginal(prefix));
                double cond = std::min(1.0, p0 / p_prefix);
                if (uniform01(rng) < cond) {
                    p_prefix = p0;
                } else {
                    prefix.back() = 1;
                    p_prefix = std::max(0.0, p_prefix - p0);
                }
            }
            if (done) {
                out.push_back(std::move(prefix));
            }
        }
        if (!done) {
            throw std::runtime_error("chain sampler: conditional denominator fell below 1e-300");
        }
    }
    return out;
}

}  // namespace gstate
