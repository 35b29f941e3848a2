#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matsec/matroid.hpp"

namespace matsec {

enum class SumKind { One, Two, Three };

std::string to_string(SumKind k);
std::optional<SumKind> sum_kind_from_string(const std::string& s);

enum class SumMode { Strict, Relaxed };

struct SumViolation {
    enum class Tag { Size, Loop, Coloop, NotCircuit, CocircuitInside, OverlapSize };
    Tag tag;
    std::string detail;
};

struct SumDiagnostics {
    std::optional<SumKind> kind;
    ElementSet shared;
    std::vector<SumViolation> violations;
};

// Seymour's delta composition: the matroid on E(M1) symdiff E(M2) whose
// cycles are (C1 symdiff C2) for cycles Ci of Mi agreeing on the shared set.
BinaryMatroid delta_sum(const BinaryMatroid& m1, const BinaryMatroid& m2);

// Reports whether the pair forms a 1-, 2-, or 3-sum. Strict mode enforces
// the size/loop/coloop/circuit/cocircuit non-triviality conditions; relaxed
// mode only requires |shared| in {0,1,3} and, for 3, a shared circuit.
SumDiagnostics classify_sum(const BinaryMatroid& m1, const BinaryMatroid& m2, SumMode mode);

// delta_sum gated by classify_sum; throws when no sum applies in the mode.
BinaryMatroid k_sum(const BinaryMatroid& m1, const BinaryMatroid& m2, SumMode mode,
                    SumKind* kind_out = nullptr);

// For {z,a} a circuit of m1 with a shared and z private to m1: returns
// (m1 - z, m2 with z parallel to a). The k-sum is unchanged by the move.
std::pair<BinaryMatroid, BinaryMatroid> move_parallel(const BinaryMatroid& m1,
                                                      const BinaryMatroid& m2, ElementId z,
                                                      ElementId a);

// For a 3-circuit {z1,z2,z3} of the sum split 1/2 between the operands
// (z1 in m1, z2/z3 in m2): the shared element a with {z1,a} a circuit of m1
// and {z2,z3,a} a circuit of m2. Throws if no witness exists.
ElementId three_circuit_witness(const BinaryMatroid& m1, const BinaryMatroid& m2, ElementId z1,
                                ElementId z2, ElementId z3);

}  // namespace matsec
