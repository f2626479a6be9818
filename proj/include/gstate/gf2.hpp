#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gstate/bitvec.hpp"

namespace gstate {

/// Dense GF(2) matrix stored as packed rows.
struct Gf2Matrix {
    size_t num_rows = 0;
    size_t num_cols = 0;
    std::vector<BitVec> rows;

    Gf2Matrix() = default;
    Gf2Matrix(size_t r, size_t c) : num_rows(r), num_cols(c), rows(r, BitVec(c)) {}

    bool get(size_t r, size_t c) const { return rows[r].get(c); }
    bool operator==(const Gf2Matrix &) const = default;
};

/// Rank by word-parallel Gaussian elimination.
size_t gf2_rank(std::vector<BitVec> rows);
inline size_t gf2_rank(const Gf2Matrix &m) { return gf2_rank(m.rows); }

/// Rank of a matrix whose rows fit in a single word.
size_t gf2_rank_u64(std::vector<uint64_t> rows);

/// Incrementally built row-space basis that can express members of its span
/// as combinations of the inserted basis vectors. At most 64 basis vectors.
class Gf2Basis {
   public:
    explicit Gf2Basis(size_t num_bits) : num_bits_(num_bits) {}

    /// Adds v if it is independent of the current basis; returns whether it was added.
    bool insert(const BitVec &v);

    /// Mask over basis indices whose XOR equals v, or nullopt if v is outside the span.
    std::optional<uint64_t> coordinates(const BitVec &v) const;

    size_t rank() const { return echelon_.size(); }
    const BitVec &basis_vector(size_t k) const { return originals_[k]; }

   private:
    struct Row {
        BitVec bits;
        size_t pivot;
        uint64_t combo;
    };
    size_t num_bits_;
    std::vector<Row> echelon_;
    std::vector<BitVec> originals_;
};

}  // namespace gstate
