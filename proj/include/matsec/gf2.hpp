#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace matsec {

// Fixed-size bit vector over GF(2), packed into 64-bit words.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool v) {
        std::uint64_t mask = std::uint64_t(1) << (i & 63);
        if (v)
            w_[i >> 6] |= mask;
        else
            w_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }

    friend BitVec operator^(BitVec a, const BitVec& b) {
        a ^= b;
        return a;
    }

    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }

    std::size_t count() const;

    // Index of the lowest set bit, or size() if none.
    std::size_t lowest() const;

    bool dot(const BitVec& o) const;

    bool operator==(const BitVec&) const = default;

    std::string to_string() const;
    static BitVec from_string(const std::string& s);

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Dense GF(2) matrix stored as rows.
struct Gf2Mat {
    std::size_t cols = 0;
    std::vector<BitVec> rows;

    Gf2Mat() = default;
    explicit Gf2Mat(std::size_t c) : cols(c) {}

    std::size_t row_count() const { return rows.size(); }
    void add_row(BitVec r) { rows.push_back(std::move(r)); }
    bool operator==(const Gf2Mat&) const = default;
};

// Reduces to RREF in place and drops zero rows. Returns the rank.
std::size_t rref(Gf2Mat& m);

std::size_t gf2_rank(Gf2Mat m);

// Basis of { x : m x = 0 }, returned in RREF with zero rows dropped.
Gf2Mat null_space(const Gf2Mat& m);

// Solves sum of a subset of the given columns = target. Columns are bit
// vectors of equal length. Returns the subset as a selection mask, or
// nullopt when the system is inconsistent.
std::optional<std::vector<bool>> solve_subset_sum(const std::vector<BitVec>& columns,
                                                  const BitVec& target);

}  // namespace matsec
