#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "gstate/graph.hpp"

namespace gstate {

using cdouble = std::complex<double>;
using Mat2 = std::array<std::array<cdouble, 2>, 2>;

inline constexpr size_t kDefaultOracleLimit = 24;

/// Final single-qubit rotation U(theta, phi) = [[cos t/2, -sin t/2], [e^{i phi} sin t/2, e^{i phi} cos t/2]].
struct Rotation {
    double theta = 0;
    double phi = 0;

    Mat2 matrix() const;
};
using LocalRotations = std::vector<Rotation>;

/// Per-qubit bra a<0| + b<1|; entry [v][z] is the coefficient of <z| on qubit v.
using MeasurementFunctional = std::vector<std::array<cdouble, 2>>;

/// Row x_v of U_v on every qubit, i.e. the bra <x| (U_1 (x) ... (x) U_n).
MeasurementFunctional functional_from_rotations(const LocalRotations &rotations, const std::vector<uint8_t> &x);

/// The bra cos(t/2) e^{-i phi} <0| + sin(t/2) <1| on every qubit.
MeasurementFunctional phased_bra_functional(const LocalRotations &rotations);

/// Outcome strings list qubit 0 first.
std::vector<uint8_t> parse_outcome(const std::string &bits);
std::string outcome_string(const std::vector<uint8_t> &x);

/// Dense state over n qubits; qubit q is bit q of the amplitude index.
struct StateVector {
    size_t n = 0;
    std::vector<cdouble> amps;

    double norm_squared() const;
    void apply(size_t qubit, const Mat2 &u);
    void apply_rotations(const LocalRotations &rotations);
    cdouble inner(const StateVector &other) const;  // <this|other>
};

/// prod_{(i,j) in E} CZ_ij |+>^n. With a non-default edge phase theta every edge
/// contributes e^{-i theta} when both endpoints are 1 (theta = pi is CZ).
StateVector build_graph_state(const Graph &g, size_t oracle_limit = kDefaultOracleLimit,
                              double edge_phase = std::numbers::pi);

cdouble amplitude(const Graph &g, const MeasurementFunctional &f, size_t oracle_limit = kDefaultOracleLimit,
                  double edge_phase = std::numbers::pi);
cdouble amplitude(const Graph &g, const LocalRotations &rotations, const std::vector<uint8_t> &x,
                  size_t oracle_limit = kDefaultOracleLimit);
double probability(const Graph &g, const LocalRotations &rotations, const std::vector<uint8_t> &x,
                   size_t oracle_limit = kDefaultOracleLimit);

/// Outcome probabilities indexed like amplitudes (bit q = outcome of qubit q).
std::vector<double> outcome_distribution(const Graph &g, const LocalRotations &rotations,
                                         size_t oracle_limit = kDefaultOracleLimit);

/// Probability that qubits 0..|prefix|-1 read prefix, by dense summation.
double marginal_probability_dense(const Graph &g, const LocalRotations &rotations, const std::vector<uint8_t> &prefix,
                                  size_t oracle_limit = kDefaultOracleLimit);

/// Seeded i.i.d. draws; outcome bit q is entry q.
std::vector<std::vector<uint8_t>> sample(const Graph &g, const LocalRotations &rotations, size_t count,
                                         uint64_t seed, size_t oracle_limit = kDefaultOracleLimit);

/// Von Neumann entropy (bits) of the reduced state on side A.
double entanglement_entropy(const StateVector &state, const Bipartition &p);
double entanglement_entropy(const Graph &g, const Bipartition &p, size_t oracle_limit = kDefaultOracleLimit);

/// |<tau_v(G)| U |G>| with U = exp(-i pi/4 X_v) prod_{u in N(v)} exp(i pi/4 Z_u).
double check_lc_unitary(const Graph &g, size_t v, size_t oracle_limit = kDefaultOracleLimit);

/// Largest norm residual of the two Z-measurement branch identities
///   P+_v |G> = |0>_v |H> / sqrt2,   P-_v |G> = |1>_v prod_{u in N(v)} Z_u |H> / sqrt2
/// with H = G minus v.
double check_deletion_projector(const Graph &g, size_t v, size_t oracle_limit = kDefaultOracleLimit);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
template <typename Rng>
double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace gstate
