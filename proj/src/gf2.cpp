#include "gstate/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace gstate {

size_t gf2_rank(std::vector<BitVec> rows) {
    size_t rank = 0;
    for (size_t i = 0; i < rows.size(); i++) {
        size_t pivot = rows[i].first_set();
        if (pivot >= rows[i].size()) {
            continue;
        }
        rank++;
        for (size_t j = i + 1; j < rows.size(); j++) {
            if (rows[j].get(pivot)) {
                rows[j] ^= rows[i];
            }
        }
    }
    return rank;
}

size_t gf2_rank_u64(std::vector<uint64_t> rows) {
    size_t rank = 0;
    for (size_t i = 0; i < rows.size(); i++) {
        uint64_t r = rows[i];
        if (!r) {
            continue;
        }
        rank++;
        uint64_t pivot = r & (~r + 1);
        for (size_t j = i + 1; j < rows.size(); j++) {
            if (rows[j] & pivot) {
                rows[j] ^= r;
            }
        }
    }
    return rank;
}

bool Gf2Basis::insert(const BitVec &v) {
    BitVec reduced = v;
    uint64_t combo = 0;
    for (const auto &row : echelon_) {
        if (reduced.get(row.pivot)) {
            reduced ^= row.bits;
            combo ^= row.combo;
        }
    }
    size_t pivot = reduced.first_set();
    if (pivot >= num_bits_) {
        return false;
    }
    size_t index = originals_.size();
    if (index >= 64) {
        throw std::length_error("Gf2Basis supports at most 64 basis vectors");
    }
    combo ^= uint64_t{1} << index;
    echelon_.push_back({std::move(reduced), pivot, combo});
    originals_.push_back(v);
    return true;
}

std::optional<uint64_t> Gf2Basis::coordinates(const BitVec &v) const {
    BitVec reduced = v;
    uint64_t combo = 0;
    for (const auto &row : echelon_) {
        if (reduced.get(row.pivot)) {
            reduced ^= row.bits;
            combo ^= row.combo;
        }
    }
    if (reduced.any()) {
        return std::nullopt;
    }
    return combo;
}

}  // namespace gstate
