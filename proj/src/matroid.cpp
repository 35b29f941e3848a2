#include "matsec/matroid.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace matsec {

WeightFn::WeightFn(std::map<ElementId, double> w) : w_(std::move(w)) {
    for (const auto& [e, v] : w_)
        if (v < 0) throw std::invalid_argument("negative weight for element " + std::to_string(e));
}

BinaryMatroid BinaryMatroid::from_columns(const std::vector<ElementId>& labels,
                                          const std::vector<BitVec>& rows) {
    for (const auto& r : rows)
        if (r.size() != labels.size())
            throw std::invalid_argument("ragged rows: row length != column count");
    ElementSet sorted = make_set(labels);
    if (sorted.size() != labels.size()) throw std::invalid_argument("duplicate column labels");

    // permutation from input order to sorted-label order
    std::vector<std::size_t> pos(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), labels[i]);
        pos[i] = std::size_t(it - sorted.begin());
    }

    BinaryMatroid m;
    m.labels_ = std::move(sorted);
    m.matrix_.cols = labels.size();
    for (const auto& r : rows) {
        BitVec v(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (r.get(i)) v.set(pos[i], true);
        m.matrix_.add_row(std::move(v));
    }
    rref(m.matrix_);
    m.cycle_space_ = null_space(m.matrix_);
    return m;
}

BinaryMatroid BinaryMatroid::from_cycle_space(const ElementSet& labels, const Gf2Mat& cycles) {
    if (cycles.cols != labels.size())
        throw std::invalid_argument("cycle space width != label count");
    BinaryMatroid m;
    m.labels_ = labels;
    m.matrix_ = null_space(cycles);
    m.matrix_.cols = labels.size();
    m.cycle_space_ = cycles;
    rref(m.cycle_space_);
    return m;
}

std::size_t BinaryMatroid::col_index(ElementId e) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), e);
    if (it == labels_.end() || *it != e)
        throw std::invalid_argument("unknown element " + std::to_string(e));
    return std::size_t(it - labels_.begin());
}

BitVec BinaryMatroid::column(ElementId e) const {
    std::size_t c = col_index(e);
    BitVec v(matrix_.row_count());
    for (std::size_t r = 0; r < matrix_.row_count(); ++r) v.set(r, matrix_.rows[r].get(c));
    return v;
}

std::size_t BinaryMatroid::rank_of(const ElementSet& s) const {
    Gf2Mat sub(s.size());
    for (std::size_t r = 0; r < matrix_.row_count(); ++r) {
        BitVec v(s.size());
        for (std::size_t j = 0; j < s.size(); ++j)
            if (matrix_.rows[r].get(col_index(s[j]))) v.set(j, true);
        sub.add_row(std::move(v));
    }
    return rref(sub);
}

bool BinaryMatroid::is_cycle(const ElementSet& s) const {
    BitVec ind(labels_.size());
    for (ElementId e : s) ind.set(col_index(e), true);
    for (const auto& row : matrix_.rows)
        if (row.dot(ind)) return false;
    return true;
}

bool BinaryMatroid::is_circuit(const ElementSet& s) const {
    // a nonempty cycle whose only dependency has full support
    return !s.empty() && is_cycle(s) && rank_of(s) + 1 == s.size();
}

bool BinaryMatroid::is_loop(ElementId e) const { return !column(e).any(); }

bool BinaryMatroid::is_coloop(ElementId e) const {
    std::size_t c = col_index(e);
    for (const auto& v : cycle_space_.rows)
        if (v.get(c)) return false;
    return true;
}

ElementSet BinaryMatroid::loops() const {
    ElementSet out;
    for (ElementId e : labels_)
        if (is_loop(e)) out.push_back(e);
    return out;
}

namespace {

struct Eliminator {
    // incremental GF(2) elimination over a fixed row dimension
    std::vector<BitVec> reduced;

    // reduces v by the current basis; returns the residue
    BitVec reduce(BitVec v) const {
        for (const auto& b : reduced) {
            std::size_t p = b.lowest();
            if (p < v.size() && v.get(p)) v ^= b;
        }
        return v;
    }

    bool try_add(const BitVec& v) {
        BitVec r = reduce(v);
        if (!r.any()) return false;
        reduced.push_back(std::move(r));
        return true;
    }
};

}  // namespace

std::vector<ElementSet> BinaryMatroid::circuits(std::size_t guard) const {
    if (labels_.size() > guard)
        throw std::invalid_argument("circuit enumeration guard exceeded: " +
                                    std::to_string(labels_.size()) + " > " +
                                    std::to_string(guard));
    std::set<ElementSet> found;
    ElementSet chosen;

    // DFS over independent sets in lexicographic label order; every circuit C
    // surfaces as fundamental_circuit(C minus its max element, max element).
    auto dfs = [&](auto&& self, std::size_t start, Eliminator& elim) -> void {
        for (std::size_t i = start; i < labels_.size(); ++i) {
            BitVec col = column(labels_[i]);
            BitVec residue = elim.reduce(col);
            if (!residue.any()) {
                found.insert(fundamental_circuit(chosen, labels_[i]));
                continue;
            }
            elim.reduced.push_back(std::move(residue));
            chosen.push_back(labels_[i]);
            self(self, i + 1, elim);
            chosen.pop_back();
            elim.reduced.pop_back();
        }
    };
    Eliminator elim;
    dfs(dfs, 0, elim);
    return {found.begin(), found.end()};
}

ElementSet BinaryMatroid::fundamental_circuit(const ElementSet& independent, ElementId e) const {
    if (!is_independent(independent)) throw std::invalid_argument("set is dependent");
    std::vector<BitVec> cols;
    cols.reserve(independent.size());
    for (ElementId x : independent) cols.push_back(column(x));
    auto sel = solve_subset_sum(cols, column(e));
    if (!sel) throw std::invalid_argument("set plus element is independent");
    ElementSet circ{e};
    for (std::size_t j = 0; j < independent.size(); ++j)
        if ((*sel)[j]) circ.push_back(independent[j]);
    return make_set(std::move(circ));
}

BinaryMatroid BinaryMatroid::minor(const ElementSet& del, const ElementSet& contract) const {
    if (!set_inter(del, contract).empty())
        throw std::invalid_argument("deletion and contraction sets overlap");
    for (ElementId e : del) col_index(e);
    for (ElementId e : contract) col_index(e);

    ElementSet keep = set_diff(set_diff(labels_, del), contract);
    // columns: contraction set first, then the survivors
    std::vector<ElementId> order = contract;
    order.insert(order.end(), keep.begin(), keep.end());

    Gf2Mat work(order.size());
    for (std::size_t r = 0; r < matrix_.row_count(); ++r) {
        BitVec v(order.size());
        for (std::size_t j = 0; j < order.size(); ++j)
            if (matrix_.rows[r].get(col_index(order[j]))) v.set(j, true);
        work.add_row(std::move(v));
    }

    // pivot on the contraction columns; surviving rows over the remaining
    // columns represent (M - del) / contract, independent of basis choice
    std::vector<bool> used(work.row_count(), false);
    for (std::size_t c = 0; c < contract.size(); ++c) {
        std::size_t sel = SIZE_MAX;
        for (std::size_t r = 0; r < work.row_count(); ++r)
            if (!used[r] && work.rows[r].get(c)) {
                sel = r;
                break;
            }
        if (sel == SIZE_MAX) continue;  // dependent contraction element
        used[sel] = true;
        for (std::size_t r = 0; r < work.row_count(); ++r)
            if (r != sel && work.rows[r].get(c)) work.rows[r] ^= work.rows[sel];
    }

    std::vector<BitVec> out_rows;
    for (std::size_t r = 0; r < work.row_count(); ++r) {
        if (used[r]) continue;
        BitVec v(keep.size());
        for (std::size_t j = 0; j < keep.size(); ++j)
            if (work.rows[r].get(contract.size() + j)) v.set(j, true);
        out_rows.push_back(std::move(v));
    }
    return from_columns(keep, out_rows);
}

BinaryMatroid BinaryMatroid::with_parallel(ElementId z, ElementId a) const {
    if (has_element(z)) throw std::invalid_argument("element already present");
    if (is_loop(a)) throw std::invalid_argument("cannot add parallel to a loop");
    std::size_t ca = col_index(a);
    std::vector<ElementId> labels(labels_.begin(), labels_.end());
    labels.push_back(z);
    std::vector<BitVec> rows;
    for (const auto& r : matrix_.rows) {
        BitVec v(labels.size());
        for (std::size_t j = 0; j < labels_.size(); ++j)
            if (r.get(j)) v.set(j, true);
        v.set(labels_.size(), r.get(ca));
        rows.push_back(std::move(v));
    }
    return from_columns(labels, rows);
}

BinaryMatroid BinaryMatroid::dual() const {
    // the dual's cycle space is this matroid's row space
    std::vector<BitVec> rows(cycle_space_.rows);
    BinaryMatroid d = from_columns(std::vector<ElementId>(labels_.begin(), labels_.end()), rows);
    return d;
}

std::vector<ElementSet> BinaryMatroid::parallel_classes() const {
    std::map<std::string, ElementSet> by_col;
    for (ElementId e : labels_) {
        BitVec c = column(e);
        if (!c.any()) continue;  // loops excluded
        by_col[c.to_string()].push_back(e);
    }
    std::vector<ElementSet> out;
    for (auto& [_, cls] : by_col) out.push_back(std::move(cls));
    std::sort(out.begin(), out.end());
    return out;
}

ElementSet greedy_opt(const BinaryMatroid& m, const WeightFn& w) {
    std::vector<ElementId> order(m.elements());
    std::stable_sort(order.begin(), order.end(), [&](ElementId a, ElementId b) {
        double wa = w.at(a), wb = w.at(b);
        if (wa != wb) return wa > wb;
        return a < b;
    });
    Eliminator elim;
    ElementSet out;
    for (ElementId e : order)
        if (elim.try_add(m.column(e))) out.push_back(e);
    return make_set(std::move(out));
}

double weight_of(const ElementSet& s, const WeightFn& w) {
    double t = 0;
    for (ElementId e : s) t += w.at(e);
    return t;
}

bool matroids_equal(const BinaryMatroid& a, const BinaryMatroid& b, EqualityMode mode) {
    if (a.elements() != b.elements()) throw std::invalid_argument("ground sets differ");
    if (mode == EqualityMode::Algebraic) return a.cycle_space() == b.cycle_space();
    std::size_t n = a.size();
    if (n > 20) throw std::invalid_argument("exhaustive equality guard exceeded");
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        ElementSet s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(a.elements()[i]);
        if (a.is_independent(s) != b.is_independent(s)) return false;
    }
    return true;
}

namespace {

BinaryMatroid relabeled(const BinaryMatroid& m, const std::map<ElementId, ElementId>& f) {
    std::vector<ElementId> labels;
    for (ElementId e : m.elements()) labels.push_back(f.at(e));
    return BinaryMatroid::from_columns(labels, m.matrix().rows);
}

}  // namespace

std::optional<std::map<ElementId, ElementId>> matroids_isomorphic(const BinaryMatroid& a,
                                                                  const BinaryMatroid& b) {
    if (a.size() != b.size()) return std::nullopt;
    if (a.size() > 10) throw std::invalid_argument("isomorphism search guard exceeded");
    if (a.rank() != b.rank()) return std::nullopt;
    {
        auto ca = a.circuits(), cb = b.circuits();
        std::vector<std::size_t> sa, sb;
        for (const auto& c : ca) sa.push_back(c.size());
        for (const auto& c : cb) sb.push_back(c.size());
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }

    // basis of a: pivot-column elements of the RREF representation
    std::vector<ElementId> basis;
    for (const auto& row : a.matrix().rows) basis.push_back(a.elements()[row.lowest()]);
    std::size_t r = basis.size();

    std::vector<BitVec> basis_cols;
    for (ElementId e : basis) basis_cols.push_back(a.column(e));
    // expansion of every element of a over the basis
    std::vector<std::vector<bool>> expansion;
    for (ElementId e : a.elements()) {
        auto sel = solve_subset_sum(basis_cols, a.column(e));
        assert(sel);
        expansion.push_back(*sel);
    }

    std::vector<ElementId> image(r, 0);
    std::vector<bool> used(b.size(), false);
    std::optional<std::map<ElementId, ElementId>> result;

    auto complete = [&]() -> bool {
        // image of any element is the GF(2) combination of basis images
        std::map<std::string, std::vector<ElementId>> groups_a, groups_b;
        for (std::size_t i = 0; i < a.size(); ++i) {
            BitVec t(b.rank());
            for (std::size_t j = 0; j < r; ++j)
                if (expansion[i][j]) t ^= b.column(image[j]);
            groups_a[t.to_string()].push_back(a.elements()[i]);
        }
        for (ElementId e : b.elements()) groups_b[b.column(e).to_string()].push_back(e);
        if (groups_a.size() != groups_b.size()) return false;
        std::map<ElementId, ElementId> f;
        for (const auto& [key, ga] : groups_a) {
            auto it = groups_b.find(key);
            if (it == groups_b.end() || it->second.size() != ga.size()) return false;
            for (std::size_t k = 0; k < ga.size(); ++k) f[ga[k]] = it->second[k];
        }
        if (!matroids_equal(relabeled(a, f), b)) return false;
        result = std::move(f);
        return true;
    };

    auto dfs = [&](auto&& self, std::size_t depth, Eliminator& elim) -> bool {
        if (depth == r) return complete();
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (used[i]) continue;
            ElementId cand = b.elements()[i];
            BitVec residue = elim.reduce(b.column(cand));
            if (!residue.any()) continue;  // images must stay independent
            elim.reduced.push_back(std::move(residue));
            used[i] = true;
            image[depth] = cand;
            if (self(self, depth + 1, elim)) return true;
            used[i] = false;
            elim.reduced.pop_back();
        }
        return false;
    };
    Eliminator elim;
    dfs(dfs, 0, elim);
    return result;
}

}  // namespace matsec
