#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gstate/graph.hpp"

namespace gstate {

enum class LatticeKind { Square, Hexagonal };
enum class Boundary { Open, Torus };

/// Rectangular lattice description. Hexagonal lattices use a brick-wall
/// embedding: every row is a path (a cycle on the torus) and (r, c) bonds
/// down to (r + 1, c) exactly when r + c is even.
struct TorusSpec {
    size_t rows = 0;
    size_t cols = 0;
    LatticeKind lattice = LatticeKind::Square;
    Boundary boundary = Boundary::Torus;
};

/// Vertex (r, c) gets id r * cols + c and label "<prefix>r,c".
Graph build_lattice(const TorusSpec &spec, const std::string &label_prefix = "");

/// Parses "<prefix>r,c" labels; nullopt for anything else.
struct Coordinate {
    std::string prefix;
    size_t row;
    size_t col;
};
std::optional<Coordinate> parse_coordinate_label(const std::string &label);
std::string coordinate_label(const std::string &prefix, size_t row, size_t col);

/// Relabels a lattice-labelled graph: "<p>r,c" becomes "<new_prefix>(r + dr),(c + dc)".
Graph shift_coordinate_labels(const Graph &g, const std::string &new_prefix, size_t dr, size_t dc);

/// Canonical k-regular witness for k in {1, 2, n-3, n-2, n-1}: perfect matching,
/// cycle, complement of a cycle, complement of a matching, complete graph.
Graph build_regular_easy(size_t n, size_t k);

/// Name of the family build_regular_easy picks, or nullopt if (n, k) is not an easy case.
std::optional<std::string> easy_family_name(size_t n, size_t k);

struct DegreeSequence {
    std::vector<size_t> a;
    std::vector<size_t> b;
};

/// Outcome of the Gale–Ryser test. When infeasible, `violation` names the failed
/// condition and `p` the prefix length at which the dominance condition fails.
struct GaleRyserResult {
    bool feasible = true;
    std::string violation;
    size_t p = 0;
};

GaleRyserResult gale_ryser_test(const DegreeSequence &seq);
inline bool gale_ryser_check(const DegreeSequence &seq) { return gale_ryser_test(seq).feasible; }

/// Bipartite realization: left vertices 0..|a|-1 labelled "L<i>", right vertices
/// |a|..|a|+|b|-1 labelled "R<j>". Left vertices are processed by non-increasing
/// degree and join the right vertices of largest residual degree (lowest index on ties).
Graph ryser_realize(const DegreeSequence &seq);

/// Two m x m square tori (labels "A:r,c" and "B:r,c") joined by a Ryser-realized
/// bipartite graph of uniform degree k - 4. Requires m >= 3 and 4 < k <= m^2.
Graph build_double_torus(size_t m, size_t k);

enum class HardFamilyKind {
    HexagonalTorus,
    SquareTorus,
    DoubleTorus,
    ComplementDoubleTorus,
    ComplementSquareTorus,
    ComplementHexagonalTorus,
};

/// Which explicit construction covers (n, k), with its parameters.
struct HardFamilyPlan {
    HardFamilyKind kind;
    size_t rows = 0;   // torus rows (or m for double tori)
    size_t cols = 0;   // torus cols (or m for double tori)
    size_t degree = 0; // degree of the double torus before complementing
};

std::string family_name(HardFamilyKind kind);

/// Plans the construction for (n, k). Throws InvalidInput explaining the failed case.
HardFamilyPlan plan_hard_family(size_t n, size_t k);
std::optional<HardFamilyPlan> try_plan_hard_family(size_t n, size_t k);

Graph build_hard_family(size_t n, size_t k);
Graph build_hard_family(const HardFamilyPlan &plan);

}  // namespace gstate
