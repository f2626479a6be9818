#include "gstate/transform.hpp"

#include <algorithm>
#include <tuple>

#include "gstate/errors.hpp"

namespace gstate {

Graph local_complement(const Graph &g, size_t v) {
    if (v >= g.num_vertices()) {
        throw InvalidInput("vertex " + std::to_string(v) + " is not in the graph");
    }
    Graph out = g;
    auto nbrs = g.neighbors(v);
    for (size_t i = 0; i < nbrs.size(); i++) {
        for (size_t j = i + 1; j < nbrs.size(); j++) {
            out.toggle_edge(nbrs[i], nbrs[j]);
        }
    }
    return out;
}

Graph local_complement(const Graph &g, const std::string &label) { return local_complement(g, g.index_of(label)); }

Graph delete_vertex(const Graph &g, size_t v) {
    if (v >= g.num_vertices()) {
        throw InvalidInput("vertex " + std::to_string(v) + " is not in the graph");
    }
    BitVec keep = BitVec::all(g.num_vertices());
    keep.set(v, false);
    return g.induced(keep);
}

Graph delete_vertex(const Graph &g, const std::string &label) { return delete_vertex(g, g.index_of(label)); }

std::string to_string(RewriteKind kind) { return kind == RewriteKind::LocalComplement ? "lc" : "delete"; }

RewriteKind parse_rewrite_kind(const std::string &name) {
    if (name == "lc" || name == "local_complement" || name == "LocalComplement") {
        return RewriteKind::LocalComplement;
    }
    if (name == "delete" || name == "del" || name == "DeleteVertex") {
        return RewriteKind::DeleteVertex;
    }
    throw InvalidInput("unknown rewrite kind '" + name + "'");
}

Graph apply_step(const Graph &g, const RewriteStep &step) {
    size_t v = g.index_of(step.target);
    return step.kind == RewriteKind::LocalComplement ? local_complement(g, v) : delete_vertex(g, v);
}

ReductionCertificate apply_pipeline(const Graph &g, const std::vector<RewriteStep> &steps) {
    Graph current = g;
    for (size_t i = 0; i < steps.size(); i++) {
        if (!current.find(steps[i].target)) {
            throw InvalidInput("step " + std::to_string(i) + " (" + to_string(steps[i].kind) + " " +
                               steps[i].target + "): no such vertex");
        }
        current = apply_step(current, steps[i]);
    }
    return {g, steps, std::move(current)};
}

bool replay_matches(const ReductionCertificate &cert) {
    Graph current = cert.initial;
    for (const auto &step : cert.steps) {
        if (!current.find(step.target)) {
            return false;
        }
        current = apply_step(current, step);
    }
    return current == cert.final;
}

namespace {

struct LatticeLabels {
    std::string prefix;
    size_t rows = 0;
    size_t cols = 0;
};

/// All labels must be coordinates sharing one prefix and covering a full rectangle.
LatticeLabels read_lattice_labels(const Graph &g) {
    LatticeLabels out;
    if (g.num_vertices() == 0) {
        throw InvalidInput("graph has no vertices");
    }
    for (size_t v = 0; v < g.num_vertices(); v++) {
        auto c = parse_coordinate_label(g.label(v));
        if (!c) {
            throw InvalidInput("label '" + g.label(v) + "' is not a lattice coordinate");
        }
        if (v == 0) {
            out.prefix = c->prefix;
        } else if (c->prefix != out.prefix) {
            throw InvalidInput("labels mix prefixes '" + out.prefix + "' and '" + c->prefix + "'");
        }
        out.rows = std::max(out.rows, c->row + 1);
        out.cols = std::max(out.cols, c->col + 1);
    }
    if (out.rows * out.cols != g.num_vertices()) {
        throw InvalidInput("coordinate labels do not cover a full rectangle");
    }
    return out;
}

std::vector<std::string> sorted_by_coordinate(std::vector<std::string> labels) {
    std::sort(labels.begin(), labels.end(), [](const std::string &x, const std::string &y) {
        auto a = *parse_coordinate_label(x);
        auto b = *parse_coordinate_label(y);
        return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    return labels;
}

/// Duality steps on the complement of a lattice whose labels are "<prefix>r,c":
/// LC at the corner, delete it, delete its lattice neighbours (its non-neighbours
/// in the complement), then the rest of row 0 and column 0.
std::vector<RewriteStep> duality_steps(const Graph &g, const LatticeLabels &lat) {
    std::string corner = coordinate_label(lat.prefix, 0, 0);
    size_t a = g.index_of(corner);
    std::vector<RewriteStep> steps{RewriteStep::lc(corner), RewriteStep::del(corner)};

    std::vector<std::string> lattice_nbrs;
    std::vector<std::string> seam;
    for (size_t v = 0; v < g.num_vertices(); v++) {
        if (v == a) {
            continue;
        }
        if (!g.has_edge(a, v)) {
            lattice_nbrs.push_back(g.label(v));
        } else {
            auto c = *parse_coordinate_label(g.label(v));
            if (c.row == 0 || c.col == 0) {
                seam.push_back(g.label(v));
            }
        }
    }
    for (const auto &label : sorted_by_coordinate(lattice_nbrs)) {
        steps.push_back(RewriteStep::del(label));
    }
    for (const auto &label : sorted_by_coordinate(seam)) {
        steps.push_back(RewriteStep::del(label));
    }
    return steps;
}

std::vector<RewriteStep> cut_open_steps(const LatticeLabels &lat) {
    std::vector<RewriteStep> steps;
    for (size_t c = 0; c < lat.cols; c++) {
        steps.push_back(RewriteStep::del(coordinate_label(lat.prefix, lat.rows - 1, c)));
    }
    for (size_t r = 0; r + 1 < lat.rows; r++) {
        steps.push_back(RewriteStep::del(coordinate_label(lat.prefix, r, lat.cols - 1)));
    }
    return steps;
}

ReductionCertificate concat(const ReductionCertificate &first, const ReductionCertificate &second) {
    ReductionCertificate out{first.initial, first.steps, second.final};
    out.steps.insert(out.steps.end(), second.steps.begin(), second.steps.end());
    return out;
}

ReductionCertificate delete_prefix(const Graph &g, const std::string &prefix) {
    std::vector<RewriteStep> steps;
    for (const auto &label : g.labels()) {
        if (label.rfind(prefix, 0) == 0) {
            steps.push_back(RewriteStep::del(label));
        }
    }
    return apply_pipeline(g, steps);
}

}  // namespace

ReductionCertificate duality_reduction(size_t m) {
    if (m < 3) {
        throw InvalidInput("duality reduction needs m >= 3, got m=" + std::to_string(m));
    }
    Graph start = complement(build_lattice({m, m, LatticeKind::Square, Boundary::Open}));
    return apply_pipeline(start, duality_steps(start, read_lattice_labels(start)));
}

Graph duality_expected(size_t m) {
    if (m < 2) {
        throw InvalidInput("duality reduction needs m >= 3, got m=" + std::to_string(m));
    }
    return shift_coordinate_labels(build_lattice({m - 1, m - 1, LatticeKind::Square, Boundary::Open}), "", 1, 1);
}

ReductionCertificate cut_open_torus(const Graph &g) {
    auto lat = read_lattice_labels(g);
    if (!is_k_regular(g, 4) && !is_k_regular(g, 3)) {
        throw InvalidInput("graph is neither a square (4-regular) nor a hexagonal (3-regular) torus");
    }
    return apply_pipeline(g, cut_open_steps(lat));
}

HardFamilyReduction hard_family_reduction(const Graph &g) {
    size_t n = g.num_vertices();
    if (n == 0) {
        throw InvalidInput("empty graph");
    }
    size_t k = g.degree(0);
    if (!is_k_regular(g, k)) {
        throw InvalidInput("graph is not regular");
    }
    HardFamilyPlan plan = plan_hard_family(n, k);
    LatticeKind lattice = (plan.kind == HardFamilyKind::HexagonalTorus ||
                           plan.kind == HardFamilyKind::ComplementHexagonalTorus)
                              ? LatticeKind::Hexagonal
                              : LatticeKind::Square;
    TorusSpec open{plan.rows - 1, plan.cols - 1, lattice, Boundary::Open};

    switch (plan.kind) {
        case HardFamilyKind::HexagonalTorus:
        case HardFamilyKind::SquareTorus: {
            auto cert = cut_open_torus(g);
            return {std::move(cert), build_lattice(open, read_lattice_labels(g).prefix)};
        }
        case HardFamilyKind::DoubleTorus: {
            if (!g.find("A:0,0") || !g.find("B:0,0")) {
                throw InvalidInput("double torus labels (A:r,c / B:r,c) are missing");
            }
            auto first = delete_prefix(g, "B:");
            auto second = cut_open_torus(first.final);
            return {concat(first, second), build_lattice(open, "A:")};
        }
        case HardFamilyKind::ComplementDoubleTorus: {
            if (!g.find("A:0,0") || !g.find("B:0,0")) {
                throw InvalidInput("double torus labels (A:r,c / B:r,c) are missing");
            }
            auto first = delete_prefix(g, "B:");
            auto lat = read_lattice_labels(first.final);
            auto second = apply_pipeline(first.final, duality_steps(first.final, lat));
            return {concat(first, second), shift_coordinate_labels(build_lattice(open), "A:", 1, 1)};
        }
        case HardFamilyKind::ComplementSquareTorus:
        case HardFamilyKind::ComplementHexagonalTorus: {
            auto lat = read_lattice_labels(g);
            auto cert = apply_pipeline(g, duality_steps(g, lat));
            return {std::move(cert), shift_coordinate_labels(build_lattice(open), lat.prefix, 1, 1)};
        }
    }
    throw std::logic_error("unhandled hard family");
}

}  // namespace gstate
