#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace gstate {

/// Fixed-length bit vector over GF(2), packed into 64-bit words.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {}

    size_t size() const { return num_bits_; }
    size_t num_words() const { return words_.size(); }

    bool get(size_t k) const { return (words_[k >> 6] >> (k & 63)) & 1; }
    void set(size_t k, bool value = true) {
        uint64_t m = uint64_t{1} << (k & 63);
        if (value) {
            words_[k >> 6] |= m;
        } else {
            words_[k >> 6] &= ~m;
        }
    }
    void flip(size_t k) { words_[k >> 6] ^= uint64_t{1} << (k & 63); }

    uint64_t word(size_t w) const { return words_[w]; }
    uint64_t &word(size_t w) { return words_[w]; }

    size_t popcount() const {
        size_t c = 0;
        for (auto w : words_) {
            c += std::popcount(w);
        }
        return c;
    }
    bool any() const {
        for (auto w : words_) {
            if (w) {
                return true;
            }
        }
        return false;
    }
    bool none() const { return !any(); }

    /// Index of the lowest set bit, or size() when empty.
    size_t first_set() const {
        for (size_t w = 0; w < words_.size(); w++) {
            if (words_[w]) {
                return w * 64 + std::countr_zero(words_[w]);
            }
        }
        return num_bits_;
    }

    BitVec &operator^=(const BitVec &other) {
        for (size_t w = 0; w < words_.size(); w++) {
            words_[w] ^= other.words_[w];
        }
        return *this;
    }
    BitVec &operator&=(const BitVec &other) {
        for (size_t w = 0; w < words_.size(); w++) {
            words_[w] &= other.words_[w];
        }
        return *this;
    }
    BitVec &operator|=(const BitVec &other) {
        for (size_t w = 0; w < words_.size(); w++) {
            words_[w] |= other.words_[w];
        }
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec &b) { return a ^= b; }
    friend BitVec operator&(BitVec a, const BitVec &b) { return a &= b; }
    friend BitVec operator|(BitVec a, const BitVec &b) { return a |= b; }

    /// Complement within the first size() bits.
    BitVec operator~() const {
        BitVec r(num_bits_);
        for (size_t w = 0; w < words_.size(); w++) {
            r.words_[w] = ~words_[w];
        }
        r.clear_padding();
        return r;
    }

    /// Parity of popcount(a & b).
    friend bool dot(const BitVec &a, const BitVec &b) {
        uint64_t acc = 0;
        for (size_t w = 0; w < a.words_.size(); w++) {
            acc ^= a.words_[w] & b.words_[w];
        }
        return std::popcount(acc) & 1;
    }

    bool operator==(const BitVec &other) const = default;

    template <typename F>
    void for_each_set(F &&f) const {
        for (size_t w = 0; w < words_.size(); w++) {
            uint64_t x = words_[w];
            while (x) {
                f(w * 64 + std::countr_zero(x));
                x &= x - 1;
            }
        }
    }

    std::vector<size_t> indices() const {
        std::vector<size_t> out;
        for_each_set([&](size_t k) { out.push_back(k); });
        return out;
    }

    static BitVec from_indices(size_t num_bits, const std::vector<size_t> &indices) {
        BitVec r(num_bits);
        for (auto k : indices) {
            r.set(k);
        }
        return r;
    }

    static BitVec all(size_t num_bits) { return ~BitVec(num_bits); }

    /// '0'/'1' characters, bit 0 first.
    std::string str() const {
        std::string s(num_bits_, '0');
        for_each_set([&](size_t k) { s[k] = '1'; });
        return s;
    }

   private:
    void clear_padding() {
        if (num_bits_ & 63) {
            words_.back() &= (uint64_t{1} << (num_bits_ & 63)) - 1;
        }
    }

    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace gstate
