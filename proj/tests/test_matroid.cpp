#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "matsec/matroid.hpp"
#include "matsec/zoo.hpp"

using namespace matsec;
using namespace matsec::testing;

TEST_CASE("from_columns validates input") {
    CHECK_THROWS(BinaryMatroid::from_columns({0, 0}, {BitVec::from_string("11")}));
    CHECK_THROWS(BinaryMatroid::from_columns({0, 1}, {BitVec::from_string("111")}));
}

TEST_CASE("k4 independence matches the graph oracle") {
    ZooEntry k4 = zoo("k4");
    for (const ElementSet& s : all_subsets(k4.matroid.elements()))
        CHECK(k4.matroid.is_independent(s) == graph_acyclic(*k4.graph, s));
}

TEST_CASE("k4 circuits: 4 triangles and 3 quadrilaterals") {
    BinaryMatroid k4 = zoo("k4").matroid;
    auto circuits = k4.circuits();
    auto brute = brute_circuits(k4);
    std::set<ElementSet> a(circuits.begin(), circuits.end());
    std::set<ElementSet> b(brute.begin(), brute.end());
    CHECK(a == b);
    int tri = 0, quad = 0;
    for (const auto& c : circuits) {
        if (c.size() == 3) ++tri;
        if (c.size() == 4) ++quad;
    }
    CHECK(circuits.size() == 7);
    CHECK(tri == 4);
    CHECK(quad == 3);
}

TEST_CASE("f7 circuits: 7 of size 3 and 7 of size 4") {
    BinaryMatroid f7 = zoo("f7").matroid;
    auto circuits = f7.circuits();
    int c3 = 0, c4 = 0;
    for (const auto& c : circuits) {
        if (c.size() == 3) ++c3;
        if (c.size() == 4) ++c4;
    }
    CHECK(circuits.size() == 14);
    CHECK(c3 == 7);
    CHECK(c4 == 7);
}

TEST_CASE("rank function is monotone and submodular") {
    for (const char* name : {"k4", "f7"}) {
        BinaryMatroid m = zoo(name).matroid;
        auto subs = all_subsets(m.elements());
        Rng rng(99);
        for (int t = 0; t < 2000; ++t) {
            const ElementSet& a = subs[rng.below(subs.size())];
            const ElementSet& b = subs[rng.below(subs.size())];
            std::size_t ru = m.rank_of(set_union(a, b));
            std::size_t ri = m.rank_of(set_inter(a, b));
            CHECK(ru + ri <= m.rank_of(a) + m.rank_of(b));
            CHECK(m.rank_of(a) <= ru);
        }
    }
}

TEST_CASE("circuit elimination axiom on f7") {
    BinaryMatroid f7 = zoo("f7").matroid;
    auto circuits = f7.circuits();
    for (const auto& c1 : circuits)
        for (const auto& c2 : circuits) {
            if (c1 == c2) continue;
            for (ElementId e : set_inter(c1, c2)) {
                ElementSet rest = set_diff(set_union(c1, c2), {e});
                CHECK_FALSE(f7.is_independent(rest));  // contains a circuit
            }
        }
}

TEST_CASE("symmetric difference of circuits is a cycle") {
    BinaryMatroid f7 = zoo("f7").matroid;
    auto circuits = f7.circuits();
    for (const auto& c1 : circuits)
        for (const auto& c2 : circuits) {
            if (c1 == c2) continue;
            ElementSet d = set_symdiff(c1, c2);
            CHECK(f7.is_cycle(d));
        }
}

TEST_CASE("minor rank formula and oracle") {
    BinaryMatroid k4 = zoo("k4").matroid;
    for (ElementId e : k4.elements()) {
        BinaryMatroid con = k4.contracted({e});
        CHECK(con.size() == 5);
        CHECK(con.rank() == k4.rank() - k4.rank_of({e}));
        // independence in M/e: I independent iff I + e independent in M
        for (const ElementSet& s : all_subsets(con.elements()))
            CHECK(con.is_independent(s) == k4.is_independent(set_union(s, {e})));

        BinaryMatroid del = k4.deleted({e});
        for (const ElementSet& s : all_subsets(del.elements()))
            CHECK(del.is_independent(s) == k4.is_independent(s));
    }
}

TEST_CASE("contraction is independent of the basis choice") {
    BinaryMatroid f7 = zoo("f7").matroid;
    ElementSet x = {0, 1};
    BinaryMatroid con = f7.contracted(x);
    CHECK(con.rank() == f7.rank() - f7.rank_of(x));
    for (const ElementSet& s : all_subsets(con.elements()))
        CHECK(con.is_independent(s) == f7.is_independent(set_union(s, x)));
}

TEST_CASE("dual matroid") {
    BinaryMatroid k4 = zoo("k4").matroid;
    BinaryMatroid d = k4.dual();
    CHECK(d.rank() == k4.size() - k4.rank());
    CHECK(matroids_equal(d.dual(), k4, EqualityMode::Exhaustive));
    // a set is independent in M* iff its complement spans M
    for (const ElementSet& s : all_subsets(k4.elements())) {
        bool co = k4.rank_of(set_diff(k4.elements(), s)) == k4.rank();
        CHECK(d.is_independent(s) == co);
    }
}

TEST_CASE("cocircuits of f7 all have size 4") {
    BinaryMatroid f7 = zoo("f7").matroid;
    for (const auto& c : f7.dual().circuits()) CHECK(c.size() == 4);
}

TEST_CASE("loops and coloops") {
    // column 2 is all-zero: a loop; element 9 is a coloop (unique nonzero row)
    std::vector<BitVec> rows = {BitVec::from_string("110"), BitVec::from_string("001")};
    BinaryMatroid m = BinaryMatroid::from_columns({2, 5, 9}, {BitVec::from_string("100"),
                                                              BitVec::from_string("001")});
    (void)rows;
    CHECK(m.is_loop(5));
    CHECK(m.loops() == ElementSet{5});
    CHECK(m.is_coloop(9));
    CHECK(m.is_coloop(2));
    CHECK_FALSE(m.is_loop(2));
}

TEST_CASE("with_parallel and parallel classes") {
    BinaryMatroid tri = zoo("triangle").matroid;
    BinaryMatroid m = tri.with_parallel(7, 0);
    CHECK(m.size() == 4);
    CHECK(m.is_circuit({0, 7}));
    auto classes = m.parallel_classes();
    CHECK(classes.size() == 3);
    bool found = false;
    for (const auto& c : classes)
        if (c == ElementSet{0, 7}) found = true;
    CHECK(found);
    CHECK_THROWS(tri.with_parallel(0, 1));  // label already present
}

TEST_CASE("fundamental circuit") {
    ZooEntry k4 = zoo("k4");
    // spanning tree {0,1,2} = edges 0-1, 0-2, 0-3; chord 3 = edge 1-2
    ElementSet tree = {0, 1, 2};
    REQUIRE(k4.matroid.is_independent(tree));
    CHECK(k4.matroid.fundamental_circuit(tree, 3) == ElementSet{0, 1, 3});
    CHECK(k4.matroid.fundamental_circuit(tree, 4) == ElementSet{0, 2, 4});
}

TEST_CASE("greedy matches brute force") {
    BinaryMatroid f7 = zoo("f7").matroid;
    Rng rng(7);
    for (int t = 0; t < 25; ++t) {
        WeightFn w = random_weights(f7.elements(), rng);
        ElementSet g = greedy_opt(f7, w);
        CHECK(f7.is_independent(g));
        CHECK(weight_of(g, w) == doctest::Approx(weight_of(brute_opt(f7, w), w)));
    }
    CHECK_THROWS(greedy_opt(f7, WeightFn({{0, -1.0}})));
}

TEST_CASE("equality modes agree") {
    BinaryMatroid a = zoo("k4").matroid;
    BinaryMatroid b = zoo("c4").matroid;
    CHECK(matroids_equal(a, a, EqualityMode::Exhaustive));
    CHECK(matroids_equal(a, a, EqualityMode::Algebraic));
    CHECK_THROWS(matroids_equal(a, b));  // different ground sets
    // same ground set, different structure: triangle vs three coloops
    BinaryMatroid tri = zoo("triangle").matroid;
    BinaryMatroid free3 = BinaryMatroid::from_columns(
        {0, 1, 2}, {BitVec::from_string("100"), BitVec::from_string("010"),
                    BitVec::from_string("001")});
    CHECK_FALSE(matroids_equal(tri, free3, EqualityMode::Exhaustive));
    CHECK_FALSE(matroids_equal(tri, free3, EqualityMode::Algebraic));
}

TEST_CASE("isomorphism search") {
    BinaryMatroid k4 = zoo("k4").matroid;
    BinaryMatroid k4r = BinaryMatroid::from_columns(
        {10, 20, 30, 40, 50, 60}, [] {
            BinaryMatroid m = zoo("k4").matroid;
            std::vector<BitVec> rows = m.matrix().rows;
            return rows;
        }());
    auto iso = matroids_isomorphic(k4, k4r);
    REQUIRE(iso.has_value());
    // the map must carry circuits onto circuits
    for (const auto& c : k4.circuits()) {
        ElementSet img;
        for (ElementId e : c) img.push_back(iso->at(e));
        img = make_set(std::move(img));
        CHECK(k4r.is_circuit(img));
    }
    BinaryMatroid tri = zoo("triangle").matroid;
    BinaryMatroid free3 = BinaryMatroid::from_columns(
        {0, 1, 2}, {BitVec::from_string("100"), BitVec::from_string("010"),
                    BitVec::from_string("001")});
    CHECK_FALSE(matroids_isomorphic(tri, free3).has_value());
}
