#include "gstate/statevector.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "gstate/errors.hpp"
#include "gstate/transform.hpp"

namespace gstate {

namespace {

void require_within_limit(size_t n, size_t limit) {
    if (n > limit) {
        throw InvalidInput("n=" + std::to_string(n) + " exceeds the dense oracle limit " + std::to_string(limit) +
                           "; use the rankdp engine");
    }
}

void require_length(size_t got, size_t n, const char *what) {
    if (got != n) {
        throw InvalidInput(std::string(what) + " has " + std::to_string(got) + " entries but the graph has " +
                           std::to_string(n) + " vertices");
    }
}

/// Contracts amplitudes with a product bra, highest qubit first.
cdouble contract(std::vector<cdouble> vec, const MeasurementFunctional &f) {
    size_t n = f.size();
    for (size_t q = n; q-- > 0;) {
        size_t half = size_t{1} << q;
        for (size_t i = 0; i < half; i++) {
            vec[i] = f[q][0] * vec[i] + f[q][1] * vec[i + half];
        }
    }
    return vec[0];
}

}  // namespace

Mat2 Rotation::matrix() const {
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    cdouble e = std::polar(1.0, phi);
    return {{{cdouble(c), cdouble(-s)}, {e * s, e * c}}};
}

MeasurementFunctional functional_from_rotations(const LocalRotations &rotations, const std::vector<uint8_t> &x) {
    require_length(x.size(), rotations.size(), "outcome");
    MeasurementFunctional f(rotations.size());
    for (size_t q = 0; q < rotations.size(); q++) {
        auto u = rotations[q].matrix();
        f[q] = {u[x[q]][0], u[x[q]][1]};
    }
    return f;
}

MeasurementFunctional phased_bra_functional(const LocalRotations &rotations) {
    MeasurementFunctional f(rotations.size());
    for (size_t q = 0; q < rotations.size(); q++) {
        double c = std::cos(rotations[q].theta / 2);
        double s = std::sin(rotations[q].theta / 2);
        f[q] = {std::polar(c, -rotations[q].phi), cdouble(s)};
    }
    return f;
}

std::vector<uint8_t> parse_outcome(const std::string &bits) {
    std::vector<uint8_t> x;
    x.reserve(bits.size());
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw InvalidInput("outcome string '" + bits + "' must contain only 0 and 1");
        }
        x.push_back(ch == '1');
    }
    return x;
}

std::string outcome_string(const std::vector<uint8_t> &x) {
    std::string s;
    for (auto b : x) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const auto &a : amps) {
        total += std::norm(a);
    }
    return total;
}

void StateVector::apply(size_t qubit, const Mat2 &u) {
    size_t stride = size_t{1} << qubit;
    for (size_t base = 0; base < amps.size(); base += 2 * stride) {
        for (size_t i = base; i < base + stride; i++) {
            cdouble a0 = amps[i];
            cdouble a1 = amps[i + stride];
            amps[i] = u[0][0] * a0 + u[0][1] * a1;
            amps[i + stride] = u[1][0] * a0 + u[1][1] * a1;
        }
    }
}

void StateVector::apply_rotations(const LocalRotations &rotations) {
    require_length(rotations.size(), n, "rotations");
    for (size_t q = 0; q < n; q++) {
        apply(q, rotations[q].matrix());
    }
}

cdouble StateVector::inner(const StateVector &other) const {
    cdouble acc = 0;
    for (size_t i = 0; i < amps.size(); i++) {
        acc += std::conj(amps[i]) * other.amps[i];
    }
    return acc;
}

StateVector build_graph_state(const Graph &g, size_t oracle_limit, double edge_phase) {
    size_t n = g.num_vertices();
    require_within_limit(n, oracle_limit);
    if (n >= 63) {
        throw InvalidInput("dense state vectors are limited to 62 qubits");
    }
    std::vector<uint64_t> upper(n, 0);
    for (const auto &[u, v] : g.edges()) {
        upper[u] |= uint64_t{1} << v;
    }
    size_t m = g.num_edges();
    double scale = std::pow(2.0, -0.5 * static_cast<double>(n));
    std::vector<cdouble> phase(m + 1);
    for (size_t c = 0; c <= m; c++) {
        if (edge_phase == std::numbers::pi) {
            phase[c] = (c % 2) ? -scale : scale;
        } else {
            phase[c] = std::polar(scale, -edge_phase * static_cast<double>(c));
        }
    }
    StateVector s{n, std::vector<cdouble>(size_t{1} << n)};
    for (uint64_t z = 0; z < s.amps.size(); z++) {
        size_t count = 0;
        uint64_t rest = z;
        while (rest) {
            size_t u = std::countr_zero(rest);
            rest &= rest - 1;
            count += std::popcount(upper[u] & z);
        }
        s.amps[z] = phase[count];
    }
    return s;
}

cdouble amplitude(const Graph &g, const MeasurementFunctional &f, size_t oracle_limit, double edge_phase) {
    require_length(f.size(), g.num_vertices(), "functional");
    return contract(build_graph_state(g, oracle_limit, edge_phase).amps, f);
}

cdouble amplitude(const Graph &g, const LocalRotations &rotations, const std::vector<uint8_t> &x,
                  size_t oracle_limit) {
    require_length(rotations.size(), g.num_vertices(), "rotations");
    return amplitude(g, functional_from_rotations(rotations, x), oracle_limit);
}

double probability(const Graph &g, const LocalRotations &rotations, const std::vector<uint8_t> &x,
                   size_t oracle_limit) {
    return std::norm(amplitude(g, rotations, x, oracle_limit));
}

std::vector<double> outcome_distribution(const Graph &g, const LocalRotations &rotations, size_t oracle_limit) {
    auto s = build_graph_state(g, oracle_limit);
    s.apply_rotations(rotations);
    std::vector<double> p(s.amps.size());
    for (size_t i = 0; i < p.size(); i++) {
        p[i] = std::norm(s.amps[i]);
    }
    return p;
}

double marginal_probability_dense(const Graph &g, const LocalRotations &rotations, const std::vector<uint8_t> &prefix,
                                  size_t oracle_limit) {
    if (prefix.size() > g.num_vertices()) {
        throw InvalidInput("prefix is longer than the number of qubits");
    }
    auto p = outcome_distribution(g, rotations, oracle_limit);
    uint64_t want = 0;
    for (size_t q = 0; q < prefix.size(); q++) {
        want |= uint64_t{prefix[q]} << q;
    }
    uint64_t mask = prefix.empty() ? 0 : ((uint64_t{1} << prefix.size()) - 1);
    double total = 0;
    for (uint64_t i = 0; i < p.size(); i++) {
        if ((i & mask) == want) {
            total += p[i];
        }
    }
    return total;
}

std::vector<std::vector<uint8_t>> sample(const Graph &g, const LocalRotations &rotations, size_t count, uint64_t seed,
                                         size_t oracle_limit) {
    size_t n = g.num_vertices();
    auto p = outcome_distribution(g, rotations, oracle_limit);
    std::vector<double> cumulative(p.size());
    double running = 0;
    for (size_t i = 0; i < p.size(); i++) {
        running += p[i];
        cumulative[i] = running;
    }
    std::mt19937_64 rng(seed);
    std::vector<std::vector<uint8_t>> out;
    out.reserve(count);
    for (size_t t = 0; t < count; t++) {
        double u = uniform01(rng) * running;
        size_t idx = std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
        idx = std::min(idx, p.size() - 1);
        std::vector<uint8_t> x(n);
        for (size_t q = 0; q < n; q++) {
            x[q] = (idx >> q) & 1;
        }
        out.push_back(std::move(x));
    }
    return out;
}

double entanglement_entropy(const StateVector &state, const Bipartition &p) {
    size_t n = state.n;
    if (p.size() != n) {
        throw InvalidInput("bipartition size does not match the state");
    }
    auto a = p.side_a.indices();
    auto b = p.side_b().indices();
    if (a.empty() || b.empty()) {
        throw InvalidInput("entropy requires both sides to be nonempty");
    }
    if (a.size() > b.size()) {
        std::swap(a, b);
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index{1} << a.size(), Eigen::Index{1} << b.size());
    for (uint64_t i = 0; i < state.amps.size(); i++) {
        uint64_t ra = 0;
        uint64_t rb = 0;
        for (size_t k = 0; k < a.size(); k++) {
            ra |= ((i >> a[k]) & 1) << k;
        }
        for (size_t k = 0; k < b.size(); k++) {
            rb |= ((i >> b[k]) & 1) << k;
        }
        m(static_cast<Eigen::Index>(ra), static_cast<Eigen::Index>(rb)) = state.amps[i];
    }
    Eigen::MatrixXcd rho = m * m.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    double entropy = 0;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); k++) {
        double lambda = solver.eigenvalues()(k);
        if (lambda > 1e-14) {
            entropy -= lambda * std::log2(lambda);
        }
    }
    return entropy;
}

double entanglement_entropy(const Graph &g, const Bipartition &p, size_t oracle_limit) {
    return entanglement_entropy(build_graph_state(g, oracle_limit), p);
}

double check_lc_unitary(const Graph &g, size_t v, size_t oracle_limit) {
    if (v >= g.num_vertices()) {
        throw InvalidInput("vertex " + std::to_string(v) + " is not in the graph");
    }
    StateVector s = build_graph_state(g, oracle_limit);
    const double h = std::numbers::sqrt2 / 2;
    Mat2 z_quarter{{{std::polar(1.0, std::numbers::pi / 4), 0}, {0, std::polar(1.0, -std::numbers::pi / 4)}}};
    Mat2 x_quarter{{{cdouble(h), cdouble(0, -h)}, {cdouble(0, -h), cdouble(h)}}};
    for (size_t u : g.neighbors(v)) {
        s.apply(u, z_quarter);
    }
    s.apply(v, x_quarter);
    StateVector target = build_graph_state(local_complement(g, v), oracle_limit);
    return std::abs(target.inner(s));
}

double check_deletion_projector(const Graph &g, size_t v, size_t oracle_limit) {
    size_t n = g.num_vertices();
    if (v >= n) {
        throw InvalidInput("vertex " + std::to_string(v) + " is not in the graph");
    }
    StateVector s = build_graph_state(g, oracle_limit);
    StateVector h = build_graph_state(delete_vertex(g, v), oracle_limit);

    uint64_t nbr_mask = 0;
    for (size_t u : g.neighbors(v)) {
        nbr_mask |= uint64_t{1} << u;
    }
    const double inv_sqrt2 = std::numbers::sqrt2 / 2;
    uint64_t low = (uint64_t{1} << v) - 1;
    double err_plus = 0;
    double err_minus = 0;
    for (uint64_t i = 0; i < s.amps.size(); i++) {
        bool bit = (i >> v) & 1;
        uint64_t j = (i & low) | ((i >> (v + 1)) << v);
        cdouble rhs = inv_sqrt2 * h.amps[j];
        if (bit) {
            if (std::popcount(i & nbr_mask) & 1) {
                rhs = -rhs;
            }
            err_minus += std::norm(s.amps[i] - rhs);
        } else {
            err_plus += std::norm(s.amps[i] - rhs);
        }
    }
    return std::max(std::sqrt(err_plus), std::sqrt(err_minus));
}

}  // namespace gstate
