#include "matsec/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace matsec {

std::size_t BitVec::count() const {
    std::size_t c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
}

std::size_t BitVec::lowest() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
        if (w_[k]) return k * 64 + std::countr_zero(w_[k]);
    return n_;
}

bool BitVec::dot(const BitVec& o) const {
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
    return std::popcount(acc) & 1u;
}

std::string BitVec::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

BitVec BitVec::from_string(const std::string& s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            v.set(i, true);
        else if (s[i] != '0')
            throw std::invalid_argument("bit string may contain only 0 and 1");
    }
    return v;
}

std::size_t rref(Gf2Mat& m) {
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < m.cols && pivot_row < m.rows.size(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < m.rows.size() && !m.rows[sel].get(col)) ++sel;
        if (sel == m.rows.size()) continue;
        std::swap(m.rows[pivot_row], m.rows[sel]);
        for (std::size_t r = 0; r < m.rows.size(); ++r)
            if (r != pivot_row && m.rows[r].get(col)) m.rows[r] ^= m.rows[pivot_row];
        ++pivot_row;
    }
    m.rows.resize(pivot_row);
    return pivot_row;
}

std::size_t gf2_rank(Gf2Mat m) { return rref(m); }

Gf2Mat null_space(const Gf2Mat& m) {
    Gf2Mat a = m;
    rref(a);
    std::size_t n = a.cols;
    // pivot column of each row
    std::vector<std::size_t> pivot_of_col(n, SIZE_MAX);
    for (std::size_t r = 0; r < a.rows.size(); ++r) pivot_of_col[a.rows[r].lowest()] = r;

    Gf2Mat basis(n);
    for (std::size_t col = 0; col < n; ++col) {
        if (pivot_of_col[col] != SIZE_MAX) continue;  // pivot column
        BitVec v(n);
        v.set(col, true);
        for (std::size_t c = 0; c < col; ++c) {
            std::size_t r = pivot_of_col[c];
            if (r != SIZE_MAX && a.rows[r].get(col)) v.set(c, true);
        }
        basis.add_row(std::move(v));
    }
    rref(basis);
    return basis;
}

std::optional<std::vector<bool>> solve_subset_sum(const std::vector<BitVec>& columns,
                                                  const BitVec& target) {
    std::size_t m = target.size();
    std::size_t k = columns.size();
    // augmented system [columns | target], one row per coordinate
    Gf2Mat sys(k + 1);
    for (std::size_t i = 0; i < m; ++i) {
        BitVec row(k + 1);
        for (std::size_t j = 0; j < k; ++j)
            if (columns[j].get(i)) row.set(j, true);
        if (target.get(i)) row.set(k, true);
        sys.add_row(std::move(row));
    }
    rref(sys);
    std::vector<bool> sel(k, false);
    for (const auto& row : sys.rows) {
        std::size_t lead = row.lowest();
        if (lead == k) return std::nullopt;  // 0 = 1
        sel[lead] = row.get(k);
    }
    return sel;
}

}  // namespace matsec
