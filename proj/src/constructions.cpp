#include "gstate/constructions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "gstate/errors.hpp"

namespace gstate {

std::string coordinate_label(const std::string &prefix, size_t row, size_t col) {
    return prefix + std::to_string(row) + "," + std::to_string(col);
}

std::optional<Coordinate> parse_coordinate_label(const std::string &label) {
    auto comma = label.rfind(',');
    if (comma == std::string::npos || comma + 1 >= label.size()) {
        return std::nullopt;
    }
    size_t start = comma;
    while (start > 0 && std::isdigit(static_cast<unsigned char>(label[start - 1]))) {
        start--;
    }
    if (start == comma) {
        return std::nullopt;
    }
    for (size_t k = comma + 1; k < label.size(); k++) {
        if (!std::isdigit(static_cast<unsigned char>(label[k]))) {
            return std::nullopt;
        }
    }
    return Coordinate{
        label.substr(0, start),
        std::stoul(label.substr(start, comma - start)),
        std::stoul(label.substr(comma + 1)),
    };
}

Graph shift_coordinate_labels(const Graph &g, const std::string &new_prefix, size_t dr, size_t dc) {
    std::vector<std::string> labels;
    labels.reserve(g.num_vertices());
    for (const auto &label : g.labels()) {
        auto c = parse_coordinate_label(label);
        if (!c) {
            throw InvalidInput("label '" + label + "' is not a lattice coordinate");
        }
        labels.push_back(coordinate_label(new_prefix, c->row + dr, c->col + dc));
    }
    return g.with_labels(std::move(labels));
}

Graph build_lattice(const TorusSpec &spec, const std::string &label_prefix) {
    size_t rows = spec.rows;
    size_t cols = spec.cols;
    bool torus = spec.boundary == Boundary::Torus;
    if (rows == 0 || cols == 0) {
        throw InvalidInput("lattice dimensions must be positive");
    }
    if (torus && (rows < 3 || cols < 3)) {
        throw InvalidInput("torus dimensions must be at least 3 x 3");
    }
    if (torus && spec.lattice == LatticeKind::Hexagonal && (rows % 2 || cols % 2)) {
        throw InvalidInput("hexagonal torus needs an even number of rows and columns");
    }

    std::vector<std::string> labels;
    for (size_t r = 0; r < rows; r++) {
        for (size_t c = 0; c < cols; c++) {
            labels.push_back(coordinate_label(label_prefix, r, c));
        }
    }
    Graph g = Graph(rows * cols).with_labels(std::move(labels));
    auto id = [&](size_t r, size_t c) { return r * cols + c; };

    for (size_t r = 0; r < rows; r++) {
        for (size_t c = 0; c < cols; c++) {
            if (c + 1 < cols) {
                g.set_edge(id(r, c), id(r, c + 1), true);
            } else if (torus) {
                g.set_edge(id(r, c), id(r, 0), true);
            }
            bool vertical = spec.lattice == LatticeKind::Square || (r + c) % 2 == 0;
            if (!vertical) {
                continue;
            }
            if (r + 1 < rows) {
                g.set_edge(id(r, c), id(r + 1, c), true);
            } else if (torus) {
                g.set_edge(id(r, c), id(0, c), true);
            }
        }
    }
    return g;
}

std::optional<std::string> easy_family_name(size_t n, size_t k) {
    if (n == 0 || k >= n || (n * k) % 2) {
        return std::nullopt;
    }
    if (k == 1 && n % 2 == 0) {
        return "matching";
    }
    if (k == 2 && n >= 3) {
        return "cycle";
    }
    if (k == n - 1) {
        return "complete";
    }
    if (k + 2 == n && n % 2 == 0) {
        return "complement-matching";
    }
    if (k + 3 == n && n >= 3) {
        return "complement-cycle";
    }
    return std::nullopt;
}

namespace {

Graph perfect_matching(size_t n) {
    Graph g(n);
    for (size_t v = 0; v + 1 < n; v += 2) {
        g.set_edge(v, v + 1, true);
    }
    return g;
}

Graph cycle(size_t n) {
    Graph g(n);
    for (size_t v = 0; v < n; v++) {
        g.set_edge(v, (v + 1) % n, true);
    }
    return g;
}

}  // namespace

Graph build_regular_easy(size_t n, size_t k) {
    auto name = easy_family_name(n, k);
    if (!name) {
        if (n > 0 && k < n && (n * k) % 2) {
            throw InvalidInput("no " + std::to_string(k) + "-regular graph on " + std::to_string(n) +
                               " vertices exists (n*k is odd)");
        }
        throw InvalidInput("(n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                           ") is not an easy case; k must be one of 1, 2, n-3, n-2, n-1 with n*k even");
    }
    if (*name == "matching") {
        return perfect_matching(n);
    }
    if (*name == "cycle") {
        return cycle(n);
    }
    if (*name == "complete") {
        return complement(Graph(n));
    }
    if (*name == "complement-matching") {
        return complement(perfect_matching(n));
    }
    return complement(cycle(n));
}

GaleRyserResult gale_ryser_test(const DegreeSequence &seq) {
    std::vector<size_t> a = seq.a;
    std::sort(a.begin(), a.end(), std::greater<>());
    size_t sum_a = std::accumulate(a.begin(), a.end(), size_t{0});
    size_t sum_b = std::accumulate(seq.b.begin(), seq.b.end(), size_t{0});
    if (sum_a != sum_b) {
        return {false, "degree sums differ (" + std::to_string(sum_a) + " != " + std::to_string(sum_b) + ")", 0};
    }
    size_t prefix = 0;
    for (size_t p = 1; p <= a.size(); p++) {
        prefix += a[p - 1];
        size_t capacity = 0;
        for (auto bj : seq.b) {
            capacity += std::min(bj, p);
        }
        if (prefix > capacity) {
            return {false,
                    "dominance fails at p=" + std::to_string(p) + " (" + std::to_string(prefix) + " > " +
                        std::to_string(capacity) + ")",
                    p};
        }
    }
    return {};
}

Graph ryser_realize(const DegreeSequence &seq) {
    auto test = gale_ryser_test(seq);
    if (!test.feasible) {
        throw InvalidInput("degree sequence is not bipartite-realizable: " + test.violation);
    }
    size_t na = seq.a.size();
    size_t nb = seq.b.size();
    std::vector<std::string> labels;
    for (size_t i = 0; i < na; i++) {
        labels.push_back("L" + std::to_string(i));
    }
    for (size_t j = 0; j < nb; j++) {
        labels.push_back("R" + std::to_string(j));
    }
    Graph g = Graph(na + nb).with_labels(std::move(labels));

    std::vector<size_t> left(na);
    std::iota(left.begin(), left.end(), 0);
    std::stable_sort(left.begin(), left.end(), [&](size_t x, size_t y) { return seq.a[x] > seq.a[y]; });

    std::vector<size_t> residual = seq.b;
    std::vector<size_t> right(nb);
    for (size_t i : left) {
        std::iota(right.begin(), right.end(), 0);
        std::stable_sort(right.begin(), right.end(), [&](size_t x, size_t y) { return residual[x] > residual[y]; });
        for (size_t t = 0; t < seq.a[i]; t++) {
            size_t j = right[t];
            if (residual[j] == 0) {
                throw std::logic_error("greedy realization ran out of residual degree");
            }
            residual[j]--;
            g.set_edge(i, na + j, true);
        }
    }
    return g;
}

Graph build_double_torus(size_t m, size_t k) {
    if (m < 3) {
        throw InvalidInput("double torus needs m >= 3");
    }
    size_t half = m * m;
    if (k <= 4 || k > half) {
        throw InvalidInput("double torus needs 4 < k <= m^2 = " + std::to_string(half) + ", got k=" +
                           std::to_string(k));
    }
    TorusSpec spec{m, m, LatticeKind::Square, Boundary::Torus};
    Graph a = build_lattice(spec, "A:");
    Graph b = build_lattice(spec, "B:");

    std::vector<std::string> labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    Graph g = Graph(2 * half).with_labels(std::move(labels));
    for (const auto &[u, v] : a.edges()) {
        g.set_edge(u, v, true);
    }
    for (const auto &[u, v] : b.edges()) {
        g.set_edge(half + u, half + v, true);
    }
    DegreeSequence cross{std::vector<size_t>(half, k - 4), std::vector<size_t>(half, k - 4)};
    Graph bip = ryser_realize(cross);
    for (const auto &[u, v] : bip.edges()) {
        // Ryser ids: left side 0..half-1, right side half..2*half-1; same layout as g.
        g.set_edge(u, v, true);
    }
    return g;
}

std::string family_name(HardFamilyKind kind) {
    switch (kind) {
        case HardFamilyKind::HexagonalTorus:
            return "hex-torus";
        case HardFamilyKind::SquareTorus:
            return "square-torus";
        case HardFamilyKind::DoubleTorus:
            return "double-torus";
        case HardFamilyKind::ComplementDoubleTorus:
            return "complement-double-torus";
        case HardFamilyKind::ComplementSquareTorus:
            return "complement-square-torus";
        case HardFamilyKind::ComplementHexagonalTorus:
            return "complement-hex-torus";
    }
    return "unknown";
}

namespace {

/// Most square factorization n = rows * cols with rows <= cols, both >= min_side
/// and (optionally) both even.
std::optional<std::pair<size_t, size_t>> torus_dims(size_t n, size_t min_side, bool even) {
    for (size_t r = static_cast<size_t>(std::sqrt(static_cast<double>(n))) + 1; r >= min_side; r--) {
        if (r * r > n || n % r) {
            continue;
        }
        size_t c = n / r;
        if (even && (r % 2 || c % 2)) {
            continue;
        }
        return std::make_pair(r, c);
    }
    return std::nullopt;
}

std::optional<size_t> double_torus_side(size_t n) {
    if (n % 2) {
        return std::nullopt;
    }
    auto m = static_cast<size_t>(std::llround(std::sqrt(static_cast<double>(n / 2))));
    if (m * m * 2 != n || m < 3) {
        return std::nullopt;
    }
    return m;
}

}  // namespace

std::optional<HardFamilyPlan> try_plan_hard_family(size_t n, size_t k) {
    if (k < 3 || k + 4 > n) {
        return std::nullopt;
    }
    if (k == 3) {
        if (auto d = torus_dims(n, 4, true)) {
            return HardFamilyPlan{HardFamilyKind::HexagonalTorus, d->first, d->second, 3};
        }
    }
    if (k == 4) {
        if (auto d = torus_dims(n, 3, false)) {
            return HardFamilyPlan{HardFamilyKind::SquareTorus, d->first, d->second, 4};
        }
    }
    if (auto m = double_torus_side(n)) {
        if (k > 4 && k <= n / 2) {
            return HardFamilyPlan{HardFamilyKind::DoubleTorus, *m, *m, k};
        }
        size_t t = n - 1 - k;
        if (k > n / 2 && t > 4 && t <= n / 2) {
            return HardFamilyPlan{HardFamilyKind::ComplementDoubleTorus, *m, *m, t};
        }
    }
    if (k + 5 == n) {
        if (auto d = torus_dims(n, 3, false)) {
            return HardFamilyPlan{HardFamilyKind::ComplementSquareTorus, d->first, d->second, 4};
        }
    }
    if (k + 4 == n) {
        if (auto d = torus_dims(n, 4, true)) {
            return HardFamilyPlan{HardFamilyKind::ComplementHexagonalTorus, d->first, d->second, 3};
        }
    }
    return std::nullopt;
}

HardFamilyPlan plan_hard_family(size_t n, size_t k) {
    if (auto plan = try_plan_hard_family(n, k)) {
        return *plan;
    }
    std::string why = "no explicit hard construction covers (n=" + std::to_string(n) + ", k=" + std::to_string(k) + "): ";
    if (k < 3 || k + 4 > n) {
        why += "k must satisfy 3 <= k <= n-4";
    } else if (k == 3 || k + 4 == n) {
        why += "the hexagonal torus needs n = rows*cols with both even and >= 4";
    } else if (k == 4 || k + 5 == n) {
        why += "the square torus needs n = rows*cols with both >= 3";
    } else if (!double_torus_side(n)) {
        why += "double-torus families need n = 2*m^2 with m >= 3";
    } else {
        why += "n/2 < k requires t = n-k-1 with 4 < t, i.e. k <= n-6";
    }
    throw InvalidInput(why);
}

Graph build_hard_family(const HardFamilyPlan &plan) {
    switch (plan.kind) {
        case HardFamilyKind::HexagonalTorus:
            return build_lattice({plan.rows, plan.cols, LatticeKind::Hexagonal, Boundary::Torus});
        case HardFamilyKind::SquareTorus:
            return build_lattice({plan.rows, plan.cols, LatticeKind::Square, Boundary::Torus});
        case HardFamilyKind::DoubleTorus:
            return build_double_torus(plan.rows, plan.degree);
        case HardFamilyKind::ComplementDoubleTorus:
            return complement(build_double_torus(plan.rows, plan.degree));
        case HardFamilyKind::ComplementSquareTorus:
            return complement(build_lattice({plan.rows, plan.cols, LatticeKind::Square, Boundary::Torus}));
        case HardFamilyKind::ComplementHexagonalTorus:
            return complement(build_lattice({plan.rows, plan.cols, LatticeKind::Hexagonal, Boundary::Torus}));
    }
    throw std::logic_error("unhandled hard family");
}

Graph build_hard_family(size_t n, size_t k) { return build_hard_family(plan_hard_family(n, k)); }

}  // namespace gstate
