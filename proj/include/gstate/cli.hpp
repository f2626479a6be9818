#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gstate/graph.hpp"

namespace gstate {

/// One row of the regularity scan: the canonical witness for (n, k) and its width.
struct PhaseScanRow {
    size_t k = 0;
    size_t n = 0;
    std::string family;            // "none" when no construction covers (n, k)
    std::optional<size_t> width;   // empty for uncovered rows
    bool exact = false;
    int64_t runtime_ms = 0;
};

/// Canonical witness for (n, k): an easy family when k is in {1, 2, n-3, n-2, n-1},
/// otherwise the explicit hard construction. nullopt when neither applies.
std::optional<std::pair<std::string, Graph>> canonical_witness(size_t n, size_t k);

/// Rows for every k in [k_min, k_max] with n*k even, computed in parallel.
std::vector<PhaseScanRow> phase_scan(size_t n, size_t k_min, size_t k_max, size_t exact_limit, int effort = 2,
                                     uint64_t seed = 0);

/// Header "k,n,family,width,exact,runtime_ms".
std::string phase_scan_csv(const std::vector<PhaseScanRow> &rows, bool timing = true);
std::string phase_scan_json(const std::vector<PhaseScanRow> &rows, bool timing = true);

/// Command-line entry point. Exit codes: 0 success, 1 internal error or failed
/// verification, 2 invalid input or violated precondition.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace gstate
