#include "matsec/sums.hpp"

#include <stdexcept>

namespace matsec {

std::string to_string(SumKind k) {
    switch (k) {
        case SumKind::One: return "ONE";
        case SumKind::Two: return "TWO";
        case SumKind::Three: return "THREE";
    }
    return "?";
}

std::optional<SumKind> sum_kind_from_string(const std::string& s) {
    if (s == "ONE") return SumKind::One;
    if (s == "TWO") return SumKind::Two;
    if (s == "THREE") return SumKind::Three;
    return std::nullopt;
}

BinaryMatroid delta_sum(const BinaryMatroid& m1, const BinaryMatroid& m2) {
    const ElementSet& e1 = m1.elements();
    const ElementSet& e2 = m2.elements();
    ElementSet shared = set_inter(e1, e2);
    ElementSet ground = set_symdiff(e1, e2);
    if (ground.empty()) throw std::invalid_argument("delta sum has empty ground set");

    const Gf2Mat& n1 = m1.cycle_space();
    const Gf2Mat& n2 = m2.cycle_space();
    std::size_t d1 = n1.row_count(), d2 = n2.row_count();

    // constraint: the two cycles agree on every shared coordinate
    Gf2Mat constraints(d1 + d2);
    for (ElementId z : shared) {
        BitVec row(d1 + d2);
        std::size_t c1 = m1.col_index(z), c2 = m2.col_index(z);
        for (std::size_t i = 0; i < d1; ++i)
            if (n1.rows[i].get(c1)) row.set(i, true);
        for (std::size_t j = 0; j < d2; ++j)
            if (n2.rows[j].get(c2)) row.set(d1 + j, true);
        constraints.add_row(std::move(row));
    }
    Gf2Mat solutions = null_space(constraints);

    // project each admissible cycle pair onto the composed ground set
    Gf2Mat cycles(ground.size());
    for (const auto& sol : solutions.rows) {
        BitVec c1(e1.size()), c2(e2.size());
        for (std::size_t i = 0; i < d1; ++i)
            if (sol.get(i)) c1 ^= n1.rows[i];
        for (std::size_t j = 0; j < d2; ++j)
            if (sol.get(d1 + j)) c2 ^= n2.rows[j];
        BitVec v(ground.size());
        for (std::size_t g = 0; g < ground.size(); ++g) {
            ElementId e = ground[g];
            bool bit = m1.has_element(e) ? c1.get(m1.col_index(e)) : c2.get(m2.col_index(e));
            v.set(g, bit);
        }
        cycles.add_row(std::move(v));
    }
    rref(cycles);
    return BinaryMatroid::from_cycle_space(ground, cycles);
}

namespace {

// any cocircuit of m contained in z? (subsets of z that are circuits of m*)
bool contains_cocircuit(const BinaryMatroid& m, const ElementSet& z) {
    BinaryMatroid d = m.dual();
    std::size_t n = z.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        ElementSet s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(z[i]);
        if (d.is_circuit(s)) return true;
    }
    return false;
}

}  // namespace

SumDiagnostics classify_sum(const BinaryMatroid& m1, const BinaryMatroid& m2, SumMode mode) {
    SumDiagnostics diag;
    diag.shared = set_inter(m1.elements(), m2.elements());
    const ElementSet& z = diag.shared;
    using Tag = SumViolation::Tag;

    if (z.size() == 2 || z.size() > 3)
        throw std::invalid_argument("no sum defined for overlap of size " +
                                    std::to_string(z.size()));

    if (z.empty()) {
        if (m1.size() == 0 || m2.size() == 0)
            diag.violations.push_back({Tag::Size, "1-sum operand has empty ground set"});
        if (mode == SumMode::Relaxed || diag.violations.empty()) diag.kind = SumKind::One;
        return diag;
    }

    if (z.size() == 1) {
        ElementId e = z[0];
        for (const auto* m : {&m1, &m2}) {
            if (m->is_loop(e)) diag.violations.push_back({Tag::Loop, "shared element is a loop"});
            if (m->is_coloop(e))
                diag.violations.push_back({Tag::Coloop, "shared element is a coloop"});
        }
        if (m1.size() < 3 || m2.size() < 3)
            diag.violations.push_back({Tag::Size, "2-sum operands must have >= 3 elements"});
        if (mode == SumMode::Relaxed || diag.violations.empty()) diag.kind = SumKind::Two;
        return diag;
    }

    // |Z| = 3
    bool circuit_both = m1.is_circuit(z) && m2.is_circuit(z);
    if (!circuit_both)
        diag.violations.push_back({Tag::NotCircuit, "shared triple is not a circuit of both"});
    if (m1.size() < 7 || m2.size() < 7)
        diag.violations.push_back({Tag::Size, "3-sum operands must have >= 7 elements"});
    if (circuit_both) {
        if (contains_cocircuit(m1, z) || contains_cocircuit(m2, z))
            diag.violations.push_back({Tag::CocircuitInside, "shared circuit contains a cocircuit"});
    }
    bool relaxed_ok = circuit_both;
    if ((mode == SumMode::Relaxed && relaxed_ok) ||
        (mode == SumMode::Strict && diag.violations.empty()))
        diag.kind = SumKind::Three;
    return diag;
}

BinaryMatroid k_sum(const BinaryMatroid& m1, const BinaryMatroid& m2, SumMode mode,
                    SumKind* kind_out) {
    SumDiagnostics diag = classify_sum(m1, m2, mode);
    if (!diag.kind) {
        std::string msg = "operands do not form a 1-, 2-, or 3-sum:";
        for (const auto& v : diag.violations) msg += " " + v.detail + ";";
        throw std::invalid_argument(msg);
    }
    if (kind_out) *kind_out = *diag.kind;
    return delta_sum(m1, m2);
}

std::pair<BinaryMatroid, BinaryMatroid> move_parallel(const BinaryMatroid& m1,
                                                      const BinaryMatroid& m2, ElementId z,
                                                      ElementId a) {
    ElementSet shared = set_inter(m1.elements(), m2.elements());
    if (!set_contains(shared, a)) throw std::invalid_argument("witness element is not shared");
    if (set_contains(shared, z) || !m1.has_element(z) || m2.has_element(z))
        throw std::invalid_argument("moved element must be private to the first operand");
    if (!m1.is_circuit(make_set({z, a})))
        throw std::invalid_argument("moved element is not parallel to the witness");
    return {m1.deleted({z}), m2.with_parallel(z, a)};
}

ElementId three_circuit_witness(const BinaryMatroid& m1, const BinaryMatroid& m2, ElementId z1,
                                ElementId z2, ElementId z3) {
    ElementSet shared = set_inter(m1.elements(), m2.elements());
    if (!m1.has_element(z1) || m2.has_element(z1) || !m2.has_element(z2) ||
        !m2.has_element(z3) || m1.has_element(z2) || m1.has_element(z3))
        throw std::invalid_argument("3-circuit is not split 1/2 between the operands");
    for (ElementId a : shared) {
        if (m1.is_circuit(make_set({z1, a})) && m2.is_circuit(make_set({z2, z3, a}))) return a;
    }
    // guaranteed to exist when {z1,z2,z3} is a circuit of the sum
    throw std::logic_error("no witness found for split 3-circuit (kernel defect)");
}

}  // namespace matsec
