#pragma once

#include <numbers>
#include <vector>

#include "gstate/statevector.hpp"

namespace gstate {

/// beta = e^{-i theta} and c_y = beta^{y(y-1)/2} for y = 0..n.
struct PhaseCoefficients {
    cdouble beta;
    std::vector<cdouble> c;
};

PhaseCoefficients coefficients(size_t n, double theta = std::numbers::pi);

/// Z[m][y]: overlap of the first m bra factors with the weight-y part of the
/// m-qubit complete-graph state (normalization 2^{-m/2} included). Entries with
/// y > m or y < 0 are zero and are not stored.
struct RecursionTable {
    std::vector<std::vector<cdouble>> z;
    size_t cells_evaluated = 0;

    cdouble total() const;
};

/// Z[m, y] = a_m Z[m-1, y] + b_m (c_y / c_{y-1}) Z[m-1, y-1] with Z[0, 0] = 1.
RecursionTable recursion_table(const MeasurementFunctional &f, double theta = std::numbers::pi);

/// <f|K_n(theta)> in O(n^2) time.
cdouble z_value(const MeasurementFunctional &f, double theta = std::numbers::pi);

/// p_x for the complete graph with edge phase theta, via the functional row <x| (x) U_i.
double probability_complete(const LocalRotations &rotations, const std::vector<uint8_t> &x,
                            double theta = std::numbers::pi);

}  // namespace gstate
