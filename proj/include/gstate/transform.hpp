#pragma once

#include <string>
#include <vector>

#include "gstate/constructions.hpp"
#include "gstate/graph.hpp"

namespace gstate {

/// Complements the edges inside the neighbourhood of v.
Graph local_complement(const Graph &g, size_t v);
Graph local_complement(const Graph &g, const std::string &label);

/// Removes v and its incident edges; the remaining ids are compacted, labels kept.
Graph delete_vertex(const Graph &g, size_t v);
Graph delete_vertex(const Graph &g, const std::string &label);

enum class RewriteKind { LocalComplement, DeleteVertex };

struct RewriteStep {
    RewriteKind kind;
    std::string target;

    static RewriteStep lc(std::string label) { return {RewriteKind::LocalComplement, std::move(label)}; }
    static RewriteStep del(std::string label) { return {RewriteKind::DeleteVertex, std::move(label)}; }
    bool operator==(const RewriteStep &) const = default;
};

std::string to_string(RewriteKind kind);
RewriteKind parse_rewrite_kind(const std::string &name);

struct ReductionCertificate {
    Graph initial;
    std::vector<RewriteStep> steps;
    Graph final;
};

Graph apply_step(const Graph &g, const RewriteStep &step);

/// Applies steps in order. A missing target raises InvalidInput naming the step index.
ReductionCertificate apply_pipeline(const Graph &g, const std::vector<RewriteStep> &steps);

/// Re-applies the steps and checks the result against the recorded final graph.
bool replay_matches(const ReductionCertificate &cert);

/// Starting from the complement of the open m x m grid: local complementation at the
/// corner (0,0), deletion of (0,0), (0,1), (1,0), then deletion of the rest of row 0
/// and column 0. Requires m >= 3.
ReductionCertificate duality_reduction(size_t m);

/// The open (m-1) x (m-1) grid labelled with coordinates 1..m-1, i.e. what
/// duality_reduction(m) must end in.
Graph duality_expected(size_t m);

/// Deletes the last row and last column of a torus whose labels are "<prefix>r,c".
/// The lattice kind is read off the regularity (4 square, 3 hexagonal).
ReductionCertificate cut_open_torus(const Graph &g);

/// Reduction of a build_hard_family graph to an open lattice, together with the
/// open lattice it must equal.
struct HardFamilyReduction {
    ReductionCertificate certificate;
    Graph expected;
    bool matches() const { return same_labelled_graph(certificate.final, expected); }
};

/// Recognizes the family from (n, k) and requires the construction labels.
HardFamilyReduction hard_family_reduction(const Graph &g);

}  // namespace gstate
