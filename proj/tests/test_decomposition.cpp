#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "helpers.hpp"

using namespace matsec;
using namespace matsec::testing;

namespace {

BinaryMatroid triangle_on(ElementId a, ElementId b, ElementId c) {
    return relabel(zoo("triangle").matroid, {a, b, c});
}

}  // namespace

TEST_CASE("build_tree materializes bottom-up") {
    DecompTree tree = badseed1_tree();
    CHECK(tree.leaves.size() == 3);
    CHECK(tree.nodes.size() == 5);
    CHECK(tree.root_matroid().elements() == ElementSet{5, 6, 7, 8});
    ValidationReport rep = validate_tree(tree, true);
    CHECK(rep.ok());
}

TEST_CASE("build_tree rejects malformed structures") {
    // duplicate leaf id
    {
        std::vector<Leaf> leaves = {{"A", "custom", triangle_on(1, 2, 3), std::nullopt},
                                    {"A", "custom", triangle_on(3, 4, 5), std::nullopt}};
        auto spec = TreeSpec::make_sum(SumKind::Two, TreeSpec::make_leaf("A"),
                                       TreeSpec::make_leaf("A"));
        CHECK_THROWS(build_tree(leaves, spec));
    }
    // overlap of size 2
    {
        std::vector<Leaf> leaves = {{"A", "custom", triangle_on(1, 2, 3), std::nullopt},
                                    {"B", "custom", triangle_on(2, 3, 4), std::nullopt}};
        auto spec = TreeSpec::make_sum(SumKind::Two, TreeSpec::make_leaf("A"),
                                       TreeSpec::make_leaf("B"));
        CHECK_THROWS(build_tree(leaves, spec));
    }
    // declared kind does not match the shared set
    {
        std::vector<Leaf> leaves = {{"A", "custom", triangle_on(1, 2, 3), std::nullopt},
                                    {"B", "custom", triangle_on(3, 4, 5), std::nullopt}};
        auto spec = TreeSpec::make_sum(SumKind::One, TreeSpec::make_leaf("A"),
                                       TreeSpec::make_leaf("B"));
        CHECK_THROWS(build_tree(leaves, spec));
    }
    // element in three leaves
    {
        std::vector<Leaf> leaves = {{"A", "custom", triangle_on(1, 2, 3), std::nullopt},
                                    {"B", "custom", triangle_on(3, 4, 5), std::nullopt},
                                    {"C", "custom", triangle_on(3, 6, 7), std::nullopt}};
        auto spec = TreeSpec::make_sum(
            SumKind::Two,
            TreeSpec::make_sum(SumKind::Two, TreeSpec::make_leaf("A"), TreeSpec::make_leaf("B")),
            TreeSpec::make_leaf("C"));
        CHECK_THROWS(build_tree(leaves, spec));
    }
    // unknown leaf reference
    {
        std::vector<Leaf> leaves = {{"A", "custom", triangle_on(1, 2, 3), std::nullopt}};
        CHECK_THROWS(build_tree(leaves, TreeSpec::make_leaf("Z")));
    }
}

TEST_CASE("validate_tree flags a tampered declared root") {
    DecompTree tree = badseed1_tree();
    tree.expected_root = BinaryMatroid::from_columns(
        {5, 6, 7, 8}, {BitVec::from_string("1111")});
    ValidationReport rep = validate_tree(tree, true);
    CHECK_FALSE(rep.ok());
}

TEST_CASE("bad sum-sets are detected") {
    DecompTree tree = badseed1_tree();
    auto bad = bad_sum_sets(tree);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].z == ElementSet{1, 2, 3});
    CHECK(potential(tree) > 0);
}

TEST_CASE("make_good removes bad sum-sets and preserves the root") {
    DecompTree tree = badseed1_tree();
    BinaryMatroid root_before = tree.root_matroid();
    std::size_t phi = potential(tree);
    std::vector<MoveRecord> log;
    std::size_t moves = make_good(tree, &log);
    CHECK(moves == 1);
    CHECK(moves <= phi);
    CHECK(log.size() == 1);
    CHECK(log[0].element == 1);
    CHECK(log[0].from_leaf == "B1");
    CHECK(log[0].to_leaf == "B2");
    CHECK(log[0].witness == 4);
    CHECK(bad_sum_sets(tree).empty());
    CHECK(matroids_equal(tree.root_matroid(), root_before, EqualityMode::Exhaustive));
    // element multiplicity still holds: 1 now lives only in B2
    CHECK_FALSE(tree.leaves[0].matroid.has_element(1));
    CHECK(tree.leaves[1].matroid.has_element(1));
}

TEST_CASE("conflict graph and rooting") {
    DecompTree tree = badseed1_tree();
    make_good(tree);
    ConflictGraph g = conflict_graph(tree);
    CHECK(g.vertex_count == 3);
    CHECK(g.is_forest);
    CHECK(g.edges.size() == 2);  // B1-B2 share {4}; B2-B3 share {1,2,3}
    RootedConflictForest forest = root_and_assign(g, tree);
    // the root leaf holds the globally smallest element id among leaves
    // B2 holds element 1 after the move, so B2 is the root
    CHECK(forest.parent[1] == -1);
    CHECK(forest.contraction[1].empty());
    CHECK(forest.parent[0] == 1);
    CHECK(forest.contraction[0] == ElementSet{4});
    CHECK(forest.parent[2] == 1);
    CHECK(forest.contraction[2] == ElementSet{1, 2, 3});
}

TEST_CASE("eliminate_bad_elements moves parallel real elements upward") {
    // M2 holds real element 6 parallel to the shared element 3
    std::vector<Leaf> leaves = {
        {"A", "custom", triangle_on(1, 2, 3), std::nullopt},
        {"B", "custom", triangle_on(3, 4, 5).with_parallel(6, 3), std::nullopt}};
    auto spec = TreeSpec::make_sum(SumKind::Two, TreeSpec::make_leaf("A"),
                                   TreeSpec::make_leaf("B"));
    DecompTree tree = build_tree(leaves, spec);
    BinaryMatroid root_before = tree.root_matroid();
    ConflictGraph g = conflict_graph(tree);
    RootedConflictForest forest = root_and_assign(g, tree);
    REQUIRE(forest.parent[1] == 0);  // A holds element 1, so A is the root
    REQUIRE(forest.contraction[1] == ElementSet{3});
    std::vector<MoveRecord> log;
    std::size_t moves = eliminate_bad_elements(tree, forest, &log);
    CHECK(moves == 1);
    CHECK(log[0].element == 6);
    CHECK(log[0].from_leaf == "B");
    CHECK(log[0].to_leaf == "A");
    CHECK(log[0].stage == "eliminate_bad_elements");
    CHECK(tree.leaves[0].matroid.has_element(6));
    CHECK_FALSE(tree.leaves[1].matroid.has_element(6));
    CHECK(matroids_equal(tree.root_matroid(), root_before, EqualityMode::Exhaustive));
    // postcondition: no 2-circuit joins a contraction element to a real one
    for (std::size_t l = 0; l < tree.leaves.size(); ++l)
        for (ElementId a : forest.contraction[l])
            for (ElementId e : tree.leaves[l].matroid.elements())
                if (e != a && set_contains(tree.root_matroid().elements(), e))
                    CHECK_FALSE(tree.leaves[l].matroid.is_circuit({a, e}));
}

TEST_CASE("normalize runs the full pipeline") {
    NormalizeResult res = normalize(badseed1_tree());
    CHECK(bad_sum_sets(res.tree).empty());
    CHECK(res.graph.is_forest);
    CHECK(res.provenance.size() == 1);
    CHECK(res.warnings.empty());
    CHECK(matroids_equal(res.tree.root_matroid(), badseed1_tree().root_matroid(),
                         EqualityMode::Exhaustive));
}

TEST_CASE("normalize strips root loops with a warning") {
    // a leaf with a loop (all-zero column) that survives into the root
    BinaryMatroid with_loop = BinaryMatroid::from_columns(
        {1, 2, 3, 9}, {BitVec::from_string("1010"), BitVec::from_string("0110")});
    std::vector<Leaf> leaves = {{"A", "custom", with_loop, std::nullopt},
                                {"B", "custom", triangle_on(3, 4, 5), std::nullopt}};
    auto spec = TreeSpec::make_sum(SumKind::Two, TreeSpec::make_leaf("A"),
                                   TreeSpec::make_leaf("B"));
    DecompTree tree = build_tree(leaves, spec);
    REQUIRE(tree.root_matroid().is_loop(9));
    NormalizeResult res = normalize(std::move(tree));
    CHECK_FALSE(res.tree.root_matroid().has_element(9));
    CHECK(res.warnings.size() == 1);
}

TEST_CASE("randomized decompositions normalize cleanly") {
    Rng rng(2026);
    for (int t = 0; t < 10; ++t) {
        DecompTree tree = random_decomposition(rng);
        BinaryMatroid root_before = tree.root_matroid();
        std::size_t phi = potential(tree);
        NormalizeResult res = normalize(std::move(tree));
        CHECK(bad_sum_sets(res.tree).empty());
        CHECK(res.graph.is_forest);
        std::size_t moves = 0;
        for (const auto& m : res.provenance)
            if (m.stage == "make_good") ++moves;
        CHECK(moves <= std::max<std::size_t>(phi, 1) * 2 * res.tree.nodes.size());
        EqualityMode mode = root_before.size() <= 16 ? EqualityMode::Exhaustive
                                                     : EqualityMode::Algebraic;
        CHECK(matroids_equal(res.tree.root_matroid(), root_before, mode));
    }
}
