#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "matsec/sums.hpp"
#include "matsec/zoo.hpp"

namespace matsec {

// A basic matroid of a decomposition.
struct Leaf {
    std::string id;
    std::string tag;  // graphic, cographic, r10, f7, f7dual, custom
    BinaryMatroid matroid;
    std::optional<GraphModel> graph;
};

// Nested sum structure referencing leaves by id.
struct TreeSpec;
using TreeSpecPtr = std::shared_ptr<TreeSpec>;
struct TreeSpec {
    std::string leaf;  // nonempty for leaf references
    SumKind kind = SumKind::One;
    TreeSpecPtr left, right;

    static TreeSpecPtr make_leaf(std::string id);
    static TreeSpecPtr make_sum(SumKind k, TreeSpecPtr l, TreeSpecPtr r);
};

struct DecompNode {
    int left = -1, right = -1;  // both -1 for leaves
    int leaf = -1;              // index into leaves for leaf nodes
    SumKind kind = SumKind::One;
    ElementSet sum_set;  // intersection of the children's ground sets
    BinaryMatroid matroid;

    bool is_leaf() const { return left < 0; }
};

// Binary tree of matroids. Leaves are the basic matroids; every internal
// node is the k-sum (relaxed mode) of its children, materialized bottom-up.
class DecompTree {
public:
    std::vector<Leaf> leaves;
    std::vector<DecompNode> nodes;
    int root = -1;
    std::optional<BinaryMatroid> expected_root;  // from input files, if given

    const BinaryMatroid& root_matroid() const { return nodes[root].matroid; }
    std::vector<int> postorder() const;
    int node_of_leaf(int leaf_index) const;
    // leaf indices under the given node
    std::vector<int> leaves_under(int node) const;
    // the unique leaf under `node` whose ground set contains e, or -1
    int leaf_under_with(int node, ElementId e) const;

    // recomputes every internal matroid and sum set bottom-up
    void materialize();
};

// Builds and materializes a tree; rejects overlaps of size 2, shared
// triples that are not circuits of both children, declared kinds that do
// not match the ground sets, and elements present in more than two leaves.
DecompTree build_tree(std::vector<Leaf> leaves, const TreeSpecPtr& spec);

struct ValidationReport {
    std::vector<std::string> findings;
    bool ok() const { return findings.empty(); }
};

// Structural mode checks overlap sizes, circuit conditions, and element
// multiplicity. Exhaustive mode additionally re-derives each internal
// matroid and checks oracle equality (exhaustively up to 16 elements).
ValidationReport validate_tree(const DecompTree& tree, bool exhaustive);

struct BadSumSet {
    int node;  // the internal node summed along z
    ElementSet z;
    int creation_left, creation_right;  // node indices of the creation matroids
};

// Size-3 sum-sets whose creation matroid on some side is not basic.
std::vector<BadSumSet> bad_sum_sets(const DecompTree& tree);

struct MoveRecord {
    ElementId element;
    std::string from_leaf, to_leaf;
    ElementId witness;
    std::string stage;  // "make_good" or "eliminate_bad_elements"
};

// Potential over bad sum-sets under the post-order node numbering; strictly
// decreases with every move of make_good.
std::size_t potential(const DecompTree& tree);

// Removes all bad sum-sets by moving split-off parallel elements into the
// side holding the rest of the circuit. Returns the move count, which is
// bounded by the initial potential. The root matroid is unchanged.
std::size_t make_good(DecompTree& tree, std::vector<MoveRecord>* log = nullptr);

struct ConflictEdge {
    int u, v;  // leaf indices
    ElementSet shared;
};

struct ConflictGraph {
    std::size_t vertex_count = 0;
    std::vector<ConflictEdge> edges;
    bool is_forest = false;
};

ConflictGraph conflict_graph(const DecompTree& tree);

struct RootedConflictForest {
    std::vector<int> parent;             // per leaf; -1 for roots
    std::vector<ElementSet> contraction;  // A_M = E(M) n E(p(M)); empty for roots
};

// Roots each tree at its vertex of minimum smallest element id and assigns
// the per-matroid contraction sets. Throws if the graph is not a forest.
RootedConflictForest root_and_assign(const ConflictGraph& g, const DecompTree& tree);

// While some real element forms a 2-circuit with a contraction-set element
// of its basic matroid, moves it to the parent matroid. The conflict graph
// and the root matroid are unchanged.
std::size_t eliminate_bad_elements(DecompTree& tree, const RootedConflictForest& forest,
                                   std::vector<MoveRecord>* log = nullptr);

struct NormalizeResult {
    DecompTree tree;
    ConflictGraph graph;
    RootedConflictForest forest;
    std::vector<MoveRecord> provenance;
    std::vector<std::string> warnings;
};

// Full pipeline: strip root loops (with a warning) -> make_good ->
// conflict graph (must be a forest) -> root_and_assign ->
// eliminate_bad_elements. The root matroid is preserved throughout
// (modulo stripped loops).
NormalizeResult normalize(DecompTree tree);

}  // namespace matsec
