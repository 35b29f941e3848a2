#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matsec/elements.hpp"
#include "matsec/gf2.hpp"

namespace matsec {

// Nonnegative weights on elements; elements absent from the map have
// weight 0 (this covers fake elements introduced by a decomposition).
class WeightFn {
public:
    WeightFn() = default;
    explicit WeightFn(std::map<ElementId, double> w);

    double at(ElementId e) const {
        auto it = w_.find(e);
        return it == w_.end() ? 0.0 : it->second;
    }

    const std::map<ElementId, double>& entries() const { return w_; }

private:
    std::map<ElementId, double> w_;
};

// Binary matroid given by a GF(2) representation matrix with labeled
// columns. The matrix is kept in RREF with columns sorted by label; the
// cycle space (null space of the matrix) is cached. A set is a cycle iff
// its indicator lies in the cycle space; circuits are the minimal
// nonempty cycles.
class BinaryMatroid {
public:
    BinaryMatroid() = default;

    // Rows are bit vectors over the columns, in the order of `labels`.
    static BinaryMatroid from_columns(const std::vector<ElementId>& labels,
                                      const std::vector<BitVec>& rows);

    // Builds the matroid whose cycle space is spanned by the given rows.
    static BinaryMatroid from_cycle_space(const ElementSet& labels, const Gf2Mat& cycles);

    const ElementSet& elements() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    std::size_t rank() const { return matrix_.row_count(); }
    const Gf2Mat& matrix() const { return matrix_; }
    const Gf2Mat& cycle_space() const { return cycle_space_; }

    bool has_element(ElementId e) const { return set_contains(labels_, e); }
    std::size_t col_index(ElementId e) const;
    BitVec column(ElementId e) const;

    std::size_t rank_of(const ElementSet& s) const;
    bool is_independent(const ElementSet& s) const { return rank_of(s) == s.size(); }
    bool is_cycle(const ElementSet& s) const;
    bool is_circuit(const ElementSet& s) const;
    bool is_loop(ElementId e) const;
    bool is_coloop(ElementId e) const;
    ElementSet loops() const;

    // All circuits. Walks independent sets in lexicographic label order and
    // records fundamental circuits; guarded by ground-set size.
    std::vector<ElementSet> circuits(std::size_t guard = 20) const;

    // The unique circuit in I + e, for I independent and I + e dependent.
    ElementSet fundamental_circuit(const ElementSet& independent, ElementId e) const;

    // (M - del) / contract on the remaining elements.
    BinaryMatroid minor(const ElementSet& del, const ElementSet& contract) const;
    BinaryMatroid deleted(const ElementSet& del) const { return minor(del, {}); }
    BinaryMatroid contracted(const ElementSet& c) const { return minor({}, c); }
    BinaryMatroid restricted(const ElementSet& keep) const {
        return minor(set_diff(labels_, keep), {});
    }

    // M(z,a): adds z with the same column as a. a must not be a loop.
    BinaryMatroid with_parallel(ElementId z, ElementId a) const;

    BinaryMatroid dual() const;

    // Equivalence classes of the parallel relation on non-loop elements.
    std::vector<ElementSet> parallel_classes() const;

private:
    ElementSet labels_;
    Gf2Mat matrix_;       // RREF, zero rows dropped
    Gf2Mat cycle_space_;  // RREF basis of the null space
};

// Maximum-weight independent set via matroid greedy. Deterministic:
// descending weight, then ascending ElementId. Rejects negative weights.
ElementSet greedy_opt(const BinaryMatroid& m, const WeightFn& w);
double weight_of(const ElementSet& s, const WeightFn& w);

enum class EqualityMode { Exhaustive, Algebraic };

// Same ground set and same independence oracle. Algebraic mode compares
// cycle spaces, which determines a binary matroid; exhaustive mode checks
// all subsets (guarded at 20 elements).
bool matroids_equal(const BinaryMatroid& a, const BinaryMatroid& b,
                    EqualityMode mode = EqualityMode::Algebraic);

// Ground-set bijection carrying circuits onto circuits, if any. Searches
// over images of a basis; at most 10 elements per side.
std::optional<std::map<ElementId, ElementId>> matroids_isomorphic(const BinaryMatroid& a,
                                                                  const BinaryMatroid& b);

}  // namespace matsec
