#pragma once

#include <string>
#include <vector>

#include "matsec/decomposition.hpp"
#include "matsec/io.hpp"
#include "matsec/secretary.hpp"

namespace matsec::testing {

// A seeded decomposition with one bad sum-set: the 3-circuit {1,2,3} of the
// intermediate 2-sum is split between leaves B1 (holding 1, parallel to the
// shared element 4) and B2 (holding 2 and 3).
struct BuiltFixture {
    std::vector<Leaf> leaves;
    TreeSpecPtr spec;
};

inline BuiltFixture badseed1() {
    BuiltFixture f;
    f.leaves.push_back({"B1", "custom",
                        BinaryMatroid::from_columns({1, 4, 5}, {BitVec::from_string("110"),
                                                                BitVec::from_string("001")}),
                        std::nullopt});
    f.leaves.push_back({"B2", "custom",
                        BinaryMatroid::from_columns(
                            {2, 3, 4, 6},
                            {BitVec::from_string("1010"), BitVec::from_string("0110"),
                             BitVec::from_string("0001")}),
                        std::nullopt});
    ZooEntry b3 = zoo("graphic:0-1,1-2,2-0,2-3,3-0");
    std::vector<ElementId> labels = {1, 2, 3, 7, 8};
    Leaf leaf{"B3", b3.tag, relabel(b3.matroid, labels),
              relabel(*b3.graph, b3.matroid.elements(), labels)};
    f.leaves.push_back(std::move(leaf));
    f.spec = TreeSpec::make_sum(SumKind::Three,
                                TreeSpec::make_sum(SumKind::Two, TreeSpec::make_leaf("B1"),
                                                   TreeSpec::make_leaf("B2")),
                                TreeSpec::make_leaf("B3"));
    return f;
}

inline DecompTree badseed1_tree() {
    BuiltFixture f = badseed1();
    return build_tree(std::move(f.leaves), f.spec);
}

// Grows a random decomposition by repeatedly attaching a fresh leaf to the
// current root with a random sum kind. Shared elements are created by
// relabeling leaf elements onto existing root elements (for 2-sums) or onto
// a 3-circuit of the root (for 3-sums). Root size stays <= max_root.
inline DecompTree random_decomposition(Rng& rng, std::size_t max_root = 16) {
    ElementId next_id = 1;
    auto fresh = [&](std::size_t n) {
        std::vector<ElementId> l(n);
        for (std::size_t i = 0; i < n; ++i) l[i] = next_id++;
        return l;
    };
    auto make_leaf = [&](const std::string& kind, const std::vector<ElementId>& labels,
                         const std::string& id) {
        ZooEntry e = zoo(kind);
        Leaf leaf{id, e.tag, relabel(e.matroid, labels), std::nullopt};
        if (e.graph) leaf.graph = relabel(*e.graph, e.matroid.elements(), labels);
        return leaf;
    };

    std::vector<Leaf> leaves;
    TreeSpecPtr spec;

    // seed leaf
    const char* seeds[] = {"triangle", "k4", "f7"};
    std::string seed_kind = seeds[rng.below(3)];
    std::size_t seed_n = zoo(seed_kind).matroid.size();
    leaves.push_back(make_leaf(seed_kind, fresh(seed_n), "L0"));
    spec = TreeSpec::make_leaf("L0");
    DecompTree tree = build_tree(leaves, spec);

    std::size_t attempts = 2 + rng.below(4);
    for (std::size_t step = 0; step < attempts; ++step) {
        const BinaryMatroid& root = tree.root_matroid();
        int kind_pick = int(rng.below(3));
        std::string id = "L" + std::to_string(leaves.size());

        if (kind_pick == 2) {
            // 3-sum: need a 3-circuit of the current root
            std::vector<ElementSet> tris;
            for (const auto& c : root.circuits())
                if (c.size() == 3) tris.push_back(c);
            if (tris.empty()) {
                --step;  // fall through to another kind next time
                kind_pick = int(rng.below(2));
            } else {
                ElementSet z = tris[rng.below(tris.size())];
                bool use_f7 = rng.below(2);
                if (use_f7 && root.size() + 1 <= max_root) {
                    // columns 1,2,3 of f7 (labels 0,1,2) form a circuit
                    std::vector<ElementId> rest = fresh(4);
                    std::vector<ElementId> labels = {z[0], z[1], z[2], rest[0], rest[1],
                                                     rest[2], rest[3]};
                    leaves.push_back(make_leaf("f7", labels, id));
                } else {
                    // k4: edges {0,1},{0,2},{1,2} (labels 0,1,3) form a triangle
                    std::vector<ElementId> rest = fresh(3);
                    std::vector<ElementId> labels = {z[0], z[1], rest[0], z[2], rest[1],
                                                     rest[2]};
                    leaves.push_back(make_leaf("k4", labels, id));
                }
                spec = TreeSpec::make_sum(SumKind::Three, spec, TreeSpec::make_leaf(id));
                tree = build_tree(leaves, spec);
                continue;
            }
        }

        if (kind_pick == 1 && root.size() >= 1) {
            // 2-sum along a random non-loop root element
            ElementSet candidates;
            for (ElementId e : root.elements())
                if (!root.is_loop(e)) candidates.push_back(e);
            if (!candidates.empty() && root.size() + 1 <= max_root) {
                ElementId z = candidates[rng.below(candidates.size())];
                std::vector<ElementId> rest = fresh(2);
                leaves.push_back(make_leaf("triangle", {z, rest[0], rest[1]}, id));
                spec = TreeSpec::make_sum(SumKind::Two, spec, TreeSpec::make_leaf(id));
                tree = build_tree(leaves, spec);
                continue;
            }
        }

        if (root.size() + 3 <= max_root) {
            leaves.push_back(make_leaf("triangle", fresh(3), id));
            spec = TreeSpec::make_sum(SumKind::One, spec, TreeSpec::make_leaf(id));
            tree = build_tree(leaves, spec);
        }
    }
    return tree;
}

}  // namespace matsec::testing
