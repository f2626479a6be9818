#include "gstate/width.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <tuple>

#include "gstate/errors.hpp"

namespace gstate {

size_t cut_rank(const Graph &g, const BitVec &subset) {
    size_t n = g.num_vertices();
    if (subset.size() != n) {
        throw InvalidInput("subset size does not match the graph");
    }
    size_t count = subset.popcount();
    if (count == 0 || count == n) {
        throw InvalidInput("cut rank needs a proper nonempty subset");
    }
    BitVec outside = ~subset;
    std::vector<BitVec> rows;
    rows.reserve(count);
    subset.for_each_set([&](size_t v) { rows.push_back(g.row(v) & outside); });
    return gf2_rank(std::move(rows));
}

size_t RankDecomposition::width() const {
    size_t w = 0;
    for (auto x : edge_widths) {
        w = std::max(w, x);
    }
    return w;
}

BitVec RankDecomposition::side(size_t e, size_t num_vertices) const {
    std::vector<std::vector<size_t>> adj(num_nodes);
    for (size_t k = 0; k < tree_edges.size(); k++) {
        if (k == e) {
            continue;
        }
        adj[tree_edges[k].first].push_back(tree_edges[k].second);
        adj[tree_edges[k].second].push_back(tree_edges[k].first);
    }
    BitVec out(num_vertices);
    std::vector<uint8_t> seen(num_nodes, 0);
    std::vector<size_t> stack{tree_edges[e].first};
    seen[tree_edges[e].first] = 1;
    while (!stack.empty()) {
        size_t x = stack.back();
        stack.pop_back();
        if (vertex_of_node[x]) {
            out.set(*vertex_of_node[x]);
        }
        for (size_t y : adj[x]) {
            if (!seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
        }
    }
    return out;
}

void validate_decomposition(const RankDecomposition &d, size_t n) {
    if (d.vertex_of_node.size() != d.num_nodes) {
        throw InvalidInput("decomposition leaf map does not cover every tree node");
    }
    if (n == 0) {
        if (d.num_nodes != 0) {
            throw InvalidInput("decomposition of an empty graph must be empty");
        }
        return;
    }
    if (d.num_nodes == 0 || d.tree_edges.size() + 1 != d.num_nodes) {
        throw InvalidInput("decomposition is not a tree (expected num_nodes - 1 edges)");
    }
    std::vector<size_t> degree(d.num_nodes, 0);
    std::vector<std::vector<size_t>> adj(d.num_nodes);
    for (const auto &[a, b] : d.tree_edges) {
        if (a >= d.num_nodes || b >= d.num_nodes || a == b) {
            throw InvalidInput("decomposition has an invalid tree edge");
        }
        degree[a]++;
        degree[b]++;
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<uint8_t> seen(d.num_nodes, 0);
    std::vector<size_t> stack{0};
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
        size_t x = stack.back();
        stack.pop_back();
        for (size_t y : adj[x]) {
            if (!seen[y]) {
                seen[y] = 1;
                reached++;
                stack.push_back(y);
            }
        }
    }
    if (reached != d.num_nodes) {
        throw InvalidInput("decomposition tree is disconnected");
    }
    std::vector<uint8_t> mapped(n, 0);
    for (size_t x = 0; x < d.num_nodes; x++) {
        const auto &v = d.vertex_of_node[x];
        if (v) {
            if (*v >= n || mapped[*v]) {
                throw InvalidInput("decomposition leaf map is not a bijection onto the vertices");
            }
            mapped[*v] = 1;
            if (d.num_nodes > 1 && degree[x] != 1) {
                throw InvalidInput("vertex " + std::to_string(*v) + " is mapped to a non-leaf tree node");
            }
        } else if (degree[x] < 2 || degree[x] > 3) {
            throw InvalidInput("internal tree node " + std::to_string(x) + " must have degree 2 or 3");
        }
    }
    if (std::find(mapped.begin(), mapped.end(), 0) != mapped.end()) {
        throw InvalidInput("decomposition leaves do not cover every vertex");
    }
}

namespace {

/// Tree rooted at node 0; below[e] holds the vertices under the child end of edge e.
struct RootedTree {
    std::vector<size_t> parent;
    std::vector<size_t> parent_edge;
    std::vector<size_t> depth;
    std::vector<BitVec> below;
};

RootedTree root_tree(const RankDecomposition &d, size_t n) {
    RootedTree t;
    size_t nodes = d.num_nodes;
    t.parent.assign(nodes, SIZE_MAX);
    t.parent_edge.assign(nodes, SIZE_MAX);
    t.depth.assign(nodes, 0);
    t.below.assign(d.tree_edges.size(), BitVec(n));
    if (nodes == 0) {
        return t;
    }
    std::vector<std::vector<std::pair<size_t, size_t>>> adj(nodes);
    for (size_t e = 0; e < d.tree_edges.size(); e++) {
        adj[d.tree_edges[e].first].emplace_back(d.tree_edges[e].second, e);
        adj[d.tree_edges[e].second].emplace_back(d.tree_edges[e].first, e);
    }
    std::vector<size_t> order{0};
    std::vector<uint8_t> seen(nodes, 0);
    seen[0] = 1;
    for (size_t i = 0; i < order.size(); i++) {
        size_t x = order[i];
        for (auto [y, e] : adj[x]) {
            if (!seen[y]) {
                seen[y] = 1;
                t.parent[y] = x;
                t.parent_edge[y] = e;
                t.depth[y] = t.depth[x] + 1;
                order.push_back(y);
            }
        }
    }
    for (size_t i = order.size(); i-- > 1;) {
        size_t x = order[i];
        size_t e = t.parent_edge[x];
        if (d.vertex_of_node[x]) {
            t.below[e].set(*d.vertex_of_node[x]);
        }
        size_t pe = t.parent_edge[t.parent[x]];
        if (pe != SIZE_MAX) {
            t.below[pe] = t.below[pe] | t.below[e];
        }
    }
    return t;
}

size_t safe_cut_rank(const Graph &g, const BitVec &s) {
    size_t c = s.popcount();
    return c == 0 || c == s.size() ? 0 : cut_rank(g, s);
}

}  // namespace

void compute_edge_widths(const Graph &g, RankDecomposition &d) {
    auto t = root_tree(d, g.num_vertices());
    d.edge_widths.assign(d.tree_edges.size(), 0);
    for (size_t e = 0; e < d.tree_edges.size(); e++) {
        d.edge_widths[e] = safe_cut_rank(g, t.below[e]);
    }
}

RankDecomposition linear_decomposition(const Graph &g, const std::vector<size_t> &order) {
    size_t n = g.num_vertices();
    if (order.size() != n) {
        throw InvalidInput("vertex order must list every vertex once");
    }
    RankDecomposition d;
    d.num_nodes = n < 3 ? n : 2 * n - 2;
    d.vertex_of_node.assign(d.num_nodes, std::nullopt);
    for (size_t i = 0; i < n; i++) {
        d.vertex_of_node[i] = order[i];
    }
    if (n == 2) {
        d.tree_edges.emplace_back(0, 1);
    } else if (n >= 3) {
        auto spine = [&](size_t j) { return n + j; };
        d.tree_edges.emplace_back(0, spine(0));
        d.tree_edges.emplace_back(1, spine(0));
        for (size_t j = 1; j + 3 <= n; j++) {
            d.tree_edges.emplace_back(spine(j - 1), spine(j));
            d.tree_edges.emplace_back(j + 1, spine(j));
        }
        d.tree_edges.emplace_back(n - 1, spine(n - 3));
    }
    validate_decomposition(d, n);
    compute_edge_widths(g, d);
    return d;
}

namespace {

size_t rank_small(std::array<uint64_t, 64> &rows, size_t count) {
    size_t rank = 0;
    for (size_t i = 0; i < count; i++) {
        uint64_t r = rows[i];
        if (!r) {
            continue;
        }
        rank++;
        uint64_t pivot = r & (~r + 1);
        for (size_t j = i + 1; j < count; j++) {
            if (rows[j] & pivot) {
                rows[j] ^= r;
            }
        }
    }
    return rank;
}

constexpr size_t kExactHardCap = 26;

}  // namespace

WidthReport exact_rank_width(const Graph &g, size_t exact_limit) {
    size_t n = g.num_vertices();
    if (n > exact_limit || n > kExactHardCap) {
        throw InvalidInput("n=" + std::to_string(n) + " exceeds the exact rank-width limit " +
                           std::to_string(std::min(exact_limit, kExactHardCap)) + "; use the heuristic");
    }
    WidthReport report;
    report.exact = true;
    if (n <= 1) {
        report.decomposition.num_nodes = n;
        report.decomposition.vertex_of_node.assign(n, size_t{0});
        return report;
    }

    std::vector<uint64_t> adj(n, 0);
    for (const auto &[u, v] : g.edges()) {
        adj[u] |= uint64_t{1} << v;
        adj[v] |= uint64_t{1} << u;
    }
    const uint64_t full = (uint64_t{1} << n) - 1;
    std::vector<uint8_t> cr(size_t{1} << n, 0);
    std::array<uint64_t, 64> rows{};
    for (uint64_t s = 1; s < full; s++) {
        size_t count = 0;
        for (uint64_t rest = s; rest; rest &= rest - 1) {
            rows[count++] = adj[std::countr_zero(rest)] & ~s & full;
        }
        cr[s] = static_cast<uint8_t>(rank_small(rows, count));
    }

    // f[S]: best width of a rooted subtree with leaf set S, counting the edge above it.
    std::vector<uint8_t> f(size_t{1} << n, 0);
    std::vector<uint32_t> split(size_t{1} << n, 0);
    auto better = [](std::tuple<int, int, uint64_t> a, std::tuple<int, int, uint64_t> b) { return a < b; };
    auto best_split = [&](uint64_t s) {
        uint64_t low = s & (~s + 1);
        uint64_t rest = s ^ low;
        std::tuple<int, int, uint64_t> best{1 << 30, 0, 0};
        for (uint64_t sub = (rest - 1) & rest;; sub = (sub - 1) & rest) {
            uint64_t t = low | sub;
            uint64_t u = s ^ t;
            int val = std::max(f[t], f[u]);
            int imbalance = std::abs(std::popcount(t) - std::popcount(u));
            std::tuple<int, int, uint64_t> cand{val, imbalance, t};
            if (better(cand, best)) {
                best = cand;
            }
            if (sub == 0) {
                break;
            }
        }
        return best;
    };
    for (uint64_t s = 1; s < full; s++) {
        if (std::popcount(s) == 1) {
            f[s] = cr[s];
            continue;
        }
        auto [val, imbalance, t] = best_split(s);
        f[s] = static_cast<uint8_t>(std::max<int>(cr[s], val));
        split[s] = static_cast<uint32_t>(t);
    }
    auto [root_val, root_imbalance, root_t] = best_split(full);

    RankDecomposition &d = report.decomposition;
    std::function<size_t(uint64_t)> build = [&](uint64_t s) -> size_t {
        size_t node = d.num_nodes++;
        if (std::popcount(s) == 1) {
            d.vertex_of_node.push_back(static_cast<size_t>(std::countr_zero(s)));
            return node;
        }
        d.vertex_of_node.push_back(std::nullopt);
        uint64_t t = split[s];
        size_t left = build(t);
        size_t right = build(s ^ t);
        d.tree_edges.emplace_back(node, left);
        d.tree_edges.emplace_back(node, right);
        return node;
    };
    size_t a = build(root_t);
    size_t b = build(full ^ root_t);
    d.tree_edges.emplace_back(a, b);
    validate_decomposition(d, n);
    compute_edge_widths(g, d);
    report.value = d.width();
    if (report.value != static_cast<size_t>(root_val)) {
        throw std::logic_error("exact rank-width witness disagrees with the DP value");
    }
    return report;
}

namespace {

/// (max width, edges at max width, sum of widths); smaller is better.
using Objective = std::tuple<size_t, size_t, size_t>;

Objective score(const RankDecomposition &d) {
    size_t w = d.width();
    size_t at_max = 0;
    size_t sum = 0;
    for (auto x : d.edge_widths) {
        at_max += x == w;
        sum += x;
    }
    return {w, at_max, sum};
}

class Bisector {
   public:
    Bisector(const Graph &g, std::mt19937_64 *rng) : g_(g), n_(g.num_vertices()), rng_(rng) {}

    RankDecomposition run() {
        d_ = {};
        std::vector<size_t> all(n_);
        std::iota(all.begin(), all.end(), 0);
        if (n_ <= 1) {
            d_.num_nodes = n_;
            d_.vertex_of_node.assign(n_, size_t{0});
            return d_;
        }
        auto [a, b] = bisect(all);
        size_t left = build(a);
        size_t right = build(b);
        d_.tree_edges.emplace_back(left, right);
        compute_edge_widths(g_, d_);
        return d_;
    }

   private:
    size_t rank_of(const std::vector<size_t> &set) const {
        if (set.empty() || set.size() == n_) {
            return 0;
        }
        return cut_rank(g_, BitVec::from_indices(n_, set));
    }

    /// Greedy ordering of s by smallest resulting cut rank, then best balanced prefix.
    std::pair<std::vector<size_t>, std::vector<size_t>> bisect(const std::vector<size_t> &s) {
        size_t size = s.size();
        size_t lo = std::max<size_t>(1, (size + 2) / 3);
        size_t hi = std::max(lo, std::min(size - 1, 2 * size / 3));

        size_t start = s.front();
        if (rng_) {
            start = s[(*rng_)() % size];
        } else {
            size_t best = SIZE_MAX;
            for (size_t v : s) {
                size_t r = rank_of({v});
                if (r < best) {
                    best = r;
                    start = v;
                }
            }
        }

        std::vector<size_t> order{start};
        BitVec in_prefix(n_);
        in_prefix.set(start);
        std::vector<size_t> prefix_ranks{rank_of(order)};
        while (order.size() < hi) {
            std::tuple<size_t, long, uint64_t, size_t> best{SIZE_MAX, 0, 0, 0};
            for (size_t v : s) {
                if (in_prefix.get(v)) {
                    continue;
                }
                BitVec cand = in_prefix;
                cand.set(v);
                size_t r = cand.popcount() == n_ ? 0 : cut_rank(g_, cand);
                long links = -static_cast<long>((g_.row(v) & in_prefix).popcount());
                uint64_t tie = rng_ ? (*rng_)() : v;
                std::tuple<size_t, long, uint64_t, size_t> key{r, links, tie, v};
                if (key < best) {
                    best = key;
                }
            }
            size_t v = std::get<3>(best);
            order.push_back(v);
            in_prefix.set(v);
            prefix_ranks.push_back(std::get<0>(best));
        }

        std::tuple<size_t, size_t, size_t> best_cut{SIZE_MAX, 0, 0};
        for (size_t k = lo; k <= hi; k++) {
            std::vector<size_t> head(order.begin(), order.begin() + static_cast<long>(k));
            BitVec head_mask = BitVec::from_indices(n_, head);
            std::vector<size_t> tail;
            for (size_t v : s) {
                if (!head_mask.get(v)) {
                    tail.push_back(v);
                }
            }
            size_t r = std::max(prefix_ranks[k - 1], rank_of(tail));
            size_t imbalance = k > size - k ? 2 * k - size : size - 2 * k;
            std::tuple<size_t, size_t, size_t> key{r, imbalance, k};
            if (key < best_cut) {
                best_cut = key;
            }
        }
        size_t k = std::get<2>(best_cut);
        std::vector<size_t> head(order.begin(), order.begin() + static_cast<long>(k));
        BitVec head_mask = BitVec::from_indices(n_, head);
        std::vector<size_t> tail;
        for (size_t v : s) {
            if (!head_mask.get(v)) {
                tail.push_back(v);
            }
        }
        std::sort(head.begin(), head.end());
        return {head, tail};
    }

    size_t build(const std::vector<size_t> &s) {
        size_t node = d_.num_nodes++;
        if (s.size() == 1) {
            d_.vertex_of_node.push_back(s.front());
            return node;
        }
        d_.vertex_of_node.push_back(std::nullopt);
        auto [a, b] = s.size() == 2 ? std::make_pair(std::vector<size_t>{s[0]}, std::vector<size_t>{s[1]}) : bisect(s);
        size_t left = build(a);
        size_t right = build(b);
        d_.tree_edges.emplace_back(node, left);
        d_.tree_edges.emplace_back(node, right);
        return node;
    }

    const Graph &g_;
    size_t n_;
    std::mt19937_64 *rng_;
    RankDecomposition d_;
};

constexpr size_t kDescentVertexCap = 128;
constexpr size_t kDescentPassCap = 20;

/// Swapping the vertices on two leaves only changes the cuts along the tree path
/// between them, so each trial updates and rescores that path alone.
void leaf_swap_descent(const Graph &g, RankDecomposition &d) {
    size_t n = g.num_vertices();
    if (n < 4 || n > kDescentVertexCap) {
        return;
    }
    compute_edge_widths(g, d);
    auto t = root_tree(d, n);
    std::vector<size_t> leaf_of(n);
    for (size_t x = 0; x < d.num_nodes; x++) {
        if (d.vertex_of_node[x]) {
            leaf_of[*d.vertex_of_node[x]] = x;
        }
    }
    auto path_edges = [&](size_t a, size_t b) {
        std::vector<size_t> out;
        while (a != b) {
            if (t.depth[a] >= t.depth[b]) {
                out.push_back(t.parent_edge[a]);
                a = t.parent[a];
            } else {
                out.push_back(t.parent_edge[b]);
                b = t.parent[b];
            }
        }
        return out;
    };
    Objective current = score(d);
    std::vector<size_t> saved;
    for (size_t pass = 0; pass < kDescentPassCap; pass++) {
        bool improved = false;
        for (size_t u = 0; u < n; u++) {
            for (size_t v = u + 1; v < n; v++) {
                auto path = path_edges(leaf_of[u], leaf_of[v]);
                saved.clear();
                for (size_t e : path) {
                    t.below[e].flip(u);
                    t.below[e].flip(v);
                    saved.push_back(d.edge_widths[e]);
                    d.edge_widths[e] = safe_cut_rank(g, t.below[e]);
                }
                Objective candidate = score(d);
                if (candidate < current) {
                    current = candidate;
                    std::swap(d.vertex_of_node[leaf_of[u]], d.vertex_of_node[leaf_of[v]]);
                    std::swap(leaf_of[u], leaf_of[v]);
                    improved = true;
                } else {
                    for (size_t i = 0; i < path.size(); i++) {
                        t.below[path[i]].flip(u);
                        t.below[path[i]].flip(v);
                        d.edge_widths[path[i]] = saved[i];
                    }
                }
            }
        }
        if (!improved) {
            break;
        }
    }
    compute_edge_widths(g, d);
}

constexpr int kRestarts = 8;

}  // namespace

WidthReport heuristic_rank_decomposition(const Graph &g, int effort, uint64_t seed) {
    RankDecomposition best = Bisector(g, nullptr).run();
    if (effort >= 1) {
        leaf_swap_descent(g, best);
    }
    if (effort >= 2) {
        std::mt19937_64 rng(seed);
        for (int r = 0; r < kRestarts; r++) {
            RankDecomposition d = Bisector(g, &rng).run();
            leaf_swap_descent(g, d);
            if (score(d) < score(best)) {
                best = std::move(d);
            }
        }
    }
    validate_decomposition(best, g.num_vertices());
    WidthReport report{best.width(), std::move(best), false};
    return report;
}

WidthReport entanglement_width(const Graph &g, size_t exact_limit, int effort, uint64_t seed) {
    if (g.num_vertices() <= std::min(exact_limit, kExactHardCap)) {
        return exact_rank_width(g, exact_limit);
    }
    return heuristic_rank_decomposition(g, effort, seed);
}

}  // namespace gstate
