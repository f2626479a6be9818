#include "gstate/complete_fast.hpp"

#include <cmath>

#include "gstate/errors.hpp"

namespace gstate {

namespace {

/// beta^e for an integer exponent, reducing e first when beta = -1 so that CZ stays exact.
cdouble beta_power(double theta, size_t e) {
    if (theta == std::numbers::pi) {
        return (e % 2) ? -1.0 : 1.0;
    }
    if (theta == 0) {
        return 1.0;
    }
    return std::polar(1.0, -theta * static_cast<double>(e));
}

}  // namespace

PhaseCoefficients coefficients(size_t n, double theta) {
    PhaseCoefficients out{std::polar(1.0, -theta), {}};
    out.c.reserve(n + 1);
    for (size_t y = 0; y <= n; y++) {
        out.c.push_back(beta_power(theta, y * (y == 0 ? 0 : y - 1) / 2));
    }
    return out;
}

cdouble RecursionTable::total() const {
    cdouble acc = 0;
    for (const auto &v : z.back()) {
        acc += v;
    }
    return acc;
}

RecursionTable recursion_table(const MeasurementFunctional &f, double theta) {
    size_t n = f.size();
    const double inv_sqrt2 = std::numbers::sqrt2 / 2;
    RecursionTable t;
    t.z.resize(n + 1);
    t.z[0] = {cdouble(1)};
    // c_y / c_{y-1} = beta^{y-1}
    std::vector<cdouble> ratio(n + 1, 1.0);
    for (size_t y = 1; y <= n; y++) {
        ratio[y] = beta_power(theta, y - 1);
    }
    for (size_t m = 1; m <= n; m++) {
        const auto &prev = t.z[m - 1];
        auto &cur = t.z[m];
        cur.assign(m + 1, 0);
        cdouble a = f[m - 1][0] * inv_sqrt2;
        cdouble b = f[m - 1][1] * inv_sqrt2;
        for (size_t y = 0; y <= m; y++) {
            cdouble v = 0;
            if (y < m) {
                v += a * prev[y];
            }
            if (y > 0) {
                v += b * ratio[y] * prev[y - 1];
            }
            cur[y] = v;
            t.cells_evaluated++;
        }
    }
    return t;
}

cdouble z_value(const MeasurementFunctional &f, double theta) { return recursion_table(f, theta).total(); }

double probability_complete(const LocalRotations &rotations, const std::vector<uint8_t> &x, double theta) {
    if (x.size() != rotations.size()) {
        throw InvalidInput("outcome has " + std::to_string(x.size()) + " bits but there are " +
                           std::to_string(rotations.size()) + " rotations");
    }
    return std::norm(z_value(functional_from_rotations(rotations, x), theta));
}

}  // namespace gstate
