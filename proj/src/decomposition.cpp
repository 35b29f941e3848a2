#include "matsec/decomposition.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace matsec {

TreeSpecPtr TreeSpec::make_leaf(std::string id) {
    auto n = std::make_shared<TreeSpec>();
    n->leaf = std::move(id);
    return n;
}

TreeSpecPtr TreeSpec::make_sum(SumKind k, TreeSpecPtr l, TreeSpecPtr r) {
    auto n = std::make_shared<TreeSpec>();
    n->kind = k;
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
}

std::vector<int> DecompTree::postorder() const {
    std::vector<int> out;
    auto walk = [&](auto&& self, int n) -> void {
        if (!nodes[n].is_leaf()) {
            self(self, nodes[n].left);
            self(self, nodes[n].right);
        }
        out.push_back(n);
    };
    if (root >= 0) walk(walk, root);
    return out;
}

int DecompTree::node_of_leaf(int leaf_index) const {
    for (std::size_t n = 0; n < nodes.size(); ++n)
        if (nodes[n].is_leaf() && nodes[n].leaf == leaf_index) return int(n);
    throw std::logic_error("leaf has no node");
}

std::vector<int> DecompTree::leaves_under(int node) const {
    std::vector<int> out;
    auto walk = [&](auto&& self, int n) -> void {
        if (nodes[n].is_leaf()) {
            out.push_back(nodes[n].leaf);
            return;
        }
        self(self, nodes[n].left);
        self(self, nodes[n].right);
    };
    walk(walk, node);
    return out;
}

int DecompTree::leaf_under_with(int node, ElementId e) const {
    for (int l : leaves_under(node))
        if (leaves[l].matroid.has_element(e)) return l;
    return -1;
}

void DecompTree::materialize() {
    for (int n : postorder()) {
        DecompNode& nd = nodes[n];
        if (nd.is_leaf()) {
            nd.matroid = leaves[nd.leaf].matroid;
            nd.sum_set.clear();
            continue;
        }
        const BinaryMatroid& l = nodes[nd.left].matroid;
        const BinaryMatroid& r = nodes[nd.right].matroid;
        SumKind kind;
        nd.matroid = k_sum(l, r, SumMode::Relaxed, &kind);
        if (kind != nd.kind)
            throw std::invalid_argument("declared sum kind " + to_string(nd.kind) +
                                        " does not match ground sets (" + to_string(kind) + ")");
        nd.sum_set = set_inter(l.elements(), r.elements());
    }
}

namespace {

void check_multiplicity(const DecompTree& t) {
    std::map<ElementId, int> leaf_count;
    for (const auto& l : t.leaves)
        for (ElementId e : l.matroid.elements()) ++leaf_count[e];
    const ElementSet& real = t.root_matroid().elements();
    for (const auto& [e, c] : leaf_count) {
        if (c > 2)
            throw std::invalid_argument("element " + std::to_string(e) +
                                        " appears in more than two leaves");
        bool is_real = set_contains(real, e);
        if (is_real && c != 1)
            throw std::invalid_argument("root element " + std::to_string(e) +
                                        " must appear in exactly one leaf");
        if (!is_real && c != 2)
            throw std::invalid_argument("fake element " + std::to_string(e) +
                                        " must appear in exactly two leaves");
    }
}

}  // namespace

DecompTree build_tree(std::vector<Leaf> leaves, const TreeSpecPtr& spec) {
    DecompTree t;
    t.leaves = std::move(leaves);
    std::map<std::string, int> leaf_index;
    for (std::size_t i = 0; i < t.leaves.size(); ++i) {
        if (!leaf_index.emplace(t.leaves[i].id, int(i)).second)
            throw std::invalid_argument("duplicate leaf id: " + t.leaves[i].id);
    }
    std::vector<bool> referenced(t.leaves.size(), false);
    auto build = [&](auto&& self, const TreeSpecPtr& s) -> int {
        if (!s) throw std::invalid_argument("malformed tree spec");
        DecompNode nd;
        if (!s->leaf.empty()) {
            auto it = leaf_index.find(s->leaf);
            if (it == leaf_index.end())
                throw std::invalid_argument("unknown leaf reference: " + s->leaf);
            if (referenced[it->second])
                throw std::invalid_argument("leaf referenced twice: " + s->leaf);
            referenced[it->second] = true;
            nd.leaf = it->second;
        } else {
            nd.kind = s->kind;
            nd.left = self(self, s->left);
            nd.right = self(self, s->right);
        }
        t.nodes.push_back(std::move(nd));
        return int(t.nodes.size()) - 1;
    };
    t.root = build(build, spec);
    t.materialize();
    check_multiplicity(t);
    return t;
}

ValidationReport validate_tree(const DecompTree& tree, bool exhaustive) {
    ValidationReport rep;
    try {
        check_multiplicity(tree);
    } catch (const std::exception& e) {
        rep.findings.push_back(e.what());
    }
    for (int n : tree.postorder()) {
        const DecompNode& nd = tree.nodes[n];
        if (nd.is_leaf()) continue;
        const BinaryMatroid& l = tree.nodes[nd.left].matroid;
        const BinaryMatroid& r = tree.nodes[nd.right].matroid;
        ElementSet z = set_inter(l.elements(), r.elements());
        if (z.size() == 2 || z.size() > 3) {
            rep.findings.push_back("overlap of size " + std::to_string(z.size()) + " at a node");
            continue;
        }
        if (z.size() == 3 && (!l.is_circuit(z) || !r.is_circuit(z)))
            rep.findings.push_back("shared triple is not a circuit of both children");
        if (z != nd.sum_set) rep.findings.push_back("stored sum set is stale");
        if (exhaustive) {
            BinaryMatroid derived = delta_sum(l, r);
            EqualityMode mode = derived.size() <= 16 ? EqualityMode::Exhaustive
                                                     : EqualityMode::Algebraic;
            if (derived.elements() != nd.matroid.elements() ||
                !matroids_equal(derived, nd.matroid, mode))
                rep.findings.push_back("internal matroid differs from the sum of its children");
        }
    }
    if (tree.expected_root) {
        const BinaryMatroid& got = tree.root_matroid();
        if (tree.expected_root->elements() != got.elements())
            rep.findings.push_back("root ground set differs from the declared root");
        else {
            EqualityMode mode = (exhaustive && got.size() <= 16) ? EqualityMode::Exhaustive
                                                                 : EqualityMode::Algebraic;
            if (!matroids_equal(*tree.expected_root, got, mode))
                rep.findings.push_back("materialized root differs from the declared root");
        }
    }
    return rep;
}

namespace {

// lowest descendant of `node` whose ground set contains all of z
int creation_node(const DecompTree& t, int node, const ElementSet& z) {
    int cur = node;
    for (;;) {
        const DecompNode& nd = t.nodes[cur];
        if (nd.is_leaf()) return cur;
        if (is_subset(z, t.nodes[nd.left].matroid.elements()))
            cur = nd.left;
        else if (is_subset(z, t.nodes[nd.right].matroid.elements()))
            cur = nd.right;
        else
            return cur;
    }
}

}  // namespace

std::vector<BadSumSet> bad_sum_sets(const DecompTree& tree) {
    std::vector<BadSumSet> out;
    for (int n : tree.postorder()) {
        const DecompNode& nd = tree.nodes[n];
        if (nd.is_leaf() || nd.sum_set.size() != 3) continue;
        int cl = creation_node(tree, nd.left, nd.sum_set);
        int cr = creation_node(tree, nd.right, nd.sum_set);
        if (!tree.nodes[cl].is_leaf() || !tree.nodes[cr].is_leaf())
            out.push_back({n, nd.sum_set, cl, cr});
    }
    return out;
}

namespace {

// post-order numbering f: children numbered before parents
std::map<int, std::size_t> postorder_numbering(const DecompTree& t) {
    std::map<int, std::size_t> f;
    std::size_t next = 1;
    for (int n : t.postorder()) f[n] = next++;
    return f;
}

std::size_t score(const DecompTree& t, const std::map<int, std::size_t>& f, const BadSumSet& b) {
    return f.at(b.creation_left) + f.at(b.creation_right);
}

void apply_move(DecompTree& t, ElementId z, int from_leaf, int to_leaf, ElementId witness,
                const char* stage, std::vector<MoveRecord>* log) {
    Leaf& src = t.leaves[from_leaf];
    Leaf& dst = t.leaves[to_leaf];
    src.matroid = src.matroid.deleted({z});
    dst.matroid = dst.matroid.with_parallel(z, witness);
    if (src.graph) src.graph->edges.erase(z);
    if (dst.graph) dst.graph->edges[z] = dst.graph->edges.at(witness);
    if (log) log->push_back({z, src.id, dst.id, witness, stage});
    t.materialize();
}

}  // namespace

std::size_t potential(const DecompTree& tree) {
    auto f = postorder_numbering(tree);
    std::size_t phi = 0;
    for (const auto& b : bad_sum_sets(tree)) phi += score(tree, f, b);
    return phi;
}

std::size_t make_good(DecompTree& tree, std::vector<MoveRecord>* log) {
    auto f = postorder_numbering(tree);
    std::size_t internal = 0;
    for (const auto& nd : tree.nodes)
        if (!nd.is_leaf()) ++internal;
    const std::size_t bound = internal * 2 * tree.nodes.size();

    std::size_t moves = 0;
    std::size_t phi = potential(tree);
    while (true) {
        auto bad = bad_sum_sets(tree);
        if (bad.empty()) break;
        if (moves > bound)
            throw std::logic_error("make_good exceeded its potential bound (kernel defect)");
        // smallest score first, for reproducible logs
        auto pick = std::min_element(bad.begin(), bad.end(),
                                     [&](const BadSumSet& a, const BadSumSet& b) {
                                         return score(tree, f, a) < score(tree, f, b);
                                     });
        int creation = !tree.nodes[pick->creation_left].is_leaf() ? pick->creation_left
                                                                  : pick->creation_right;
        const DecompNode& m = tree.nodes[creation];
        ElementSet in_left = set_inter(pick->z, tree.nodes[m.left].matroid.elements());
        int single_side = in_left.size() == 1 ? m.left : m.right;
        int pair_side = single_side == m.left ? m.right : m.left;
        ElementSet singles = set_inter(pick->z, tree.nodes[single_side].matroid.elements());
        ElementSet pair = set_inter(pick->z, tree.nodes[pair_side].matroid.elements());
        ElementId z1 = singles[0];
        ElementId a = three_circuit_witness(tree.nodes[single_side].matroid,
                                            tree.nodes[pair_side].matroid, z1, pair[0], pair[1]);
        int from_leaf = tree.leaf_under_with(single_side, z1);
        int to_leaf = tree.leaf_under_with(pair_side, a);
        apply_move(tree, z1, from_leaf, to_leaf, a, "make_good", log);
        ++moves;
        std::size_t phi_next = potential(tree);
        if (phi_next >= phi)
            throw std::logic_error("make_good potential did not decrease (kernel defect)");
        phi = phi_next;
    }
    return moves;
}

ConflictGraph conflict_graph(const DecompTree& tree) {
    ConflictGraph g;
    g.vertex_count = tree.leaves.size();
    for (std::size_t i = 0; i < tree.leaves.size(); ++i)
        for (std::size_t j = i + 1; j < tree.leaves.size(); ++j) {
            ElementSet shared =
                set_inter(tree.leaves[i].matroid.elements(), tree.leaves[j].matroid.elements());
            if (!shared.empty()) g.edges.push_back({int(i), int(j), std::move(shared)});
        }
    // forest iff no edge closes a cycle
    std::vector<int> parent(g.vertex_count);
    for (std::size_t i = 0; i < g.vertex_count; ++i) parent[i] = int(i);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    g.is_forest = true;
    for (const auto& e : g.edges) {
        int a = find(e.u), b = find(e.v);
        if (a == b) {
            g.is_forest = false;
            break;
        }
        parent[a] = b;
    }
    return g;
}

RootedConflictForest root_and_assign(const ConflictGraph& g, const DecompTree& tree) {
    if (!g.is_forest) throw std::invalid_argument("conflict graph is not a forest");
    std::size_t n = g.vertex_count;
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : g.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    // component representative: vertex of minimum smallest element id
    std::vector<int> comp(n, -1);
    RootedConflictForest f;
    f.parent.assign(n, -2);
    f.contraction.assign(n, {});
    auto min_id = [&](int v) {
        const ElementSet& e = tree.leaves[v].matroid.elements();
        return e.empty() ? ElementId(~0u) : e.front();
    };
    for (std::size_t start = 0; start < n; ++start) {
        if (comp[start] >= 0) continue;
        std::vector<int> members, stack{int(start)};
        comp[start] = int(start);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (int u : adj[v])
                if (comp[u] < 0) {
                    comp[u] = int(start);
                    stack.push_back(u);
                }
        }
        int root = *std::min_element(members.begin(), members.end(), [&](int a, int b) {
            if (min_id(a) != min_id(b)) return min_id(a) < min_id(b);
            return a < b;
        });
        // BFS from the root assigns parents
        f.parent[root] = -1;
        std::vector<int> queue{root};
        for (std::size_t q = 0; q < queue.size(); ++q) {
            int v = queue[q];
            for (int u : adj[v])
                if (f.parent[u] == -2) {
                    f.parent[u] = v;
                    f.contraction[u] = set_inter(tree.leaves[u].matroid.elements(),
                                                 tree.leaves[v].matroid.elements());
                    queue.push_back(u);
                }
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        const ElementSet& a = f.contraction[v];
        if (a.size() == 2 || a.size() > 3)
            throw std::logic_error("contraction set has invalid size");
        if (a.size() == 3 && !tree.leaves[v].matroid.is_circuit(a))
            throw std::logic_error("size-3 contraction set is not a circuit");
    }
    return f;
}

std::size_t eliminate_bad_elements(DecompTree& tree, const RootedConflictForest& forest,
                                   std::vector<MoveRecord>* log) {
    std::size_t moves = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        const ElementSet real = tree.root_matroid().elements();
        for (std::size_t l = 0; l < tree.leaves.size() && !changed; ++l) {
            if (forest.parent[l] < 0) continue;
            const BinaryMatroid& m = tree.leaves[l].matroid;
            for (ElementId z : set_inter(m.elements(), real)) {
                ElementId witness = 0;
                bool found = false;
                for (ElementId a : forest.contraction[l])
                    if (m.is_circuit(make_set({z, a}))) {
                        witness = a;
                        found = true;
                        break;
                    }
                if (!found) continue;
                apply_move(tree, z, int(l), forest.parent[l], witness,
                           "eliminate_bad_elements", log);
                ++moves;
                changed = true;
                break;
            }
        }
    }
    return moves;
}

NormalizeResult normalize(DecompTree tree) {
    NormalizeResult res;

    ElementSet loops = tree.root_matroid().loops();
    if (!loops.empty()) {
        for (ElementId e : loops) {
            int l = -1;
            for (std::size_t i = 0; i < tree.leaves.size(); ++i)
                if (tree.leaves[i].matroid.has_element(e)) l = int(i);
            tree.leaves[l].matroid = tree.leaves[l].matroid.deleted({e});
            if (tree.leaves[l].graph) tree.leaves[l].graph->edges.erase(e);
            res.warnings.push_back("stripped loop element " + std::to_string(e) + " from leaf " +
                                   tree.leaves[l].id);
        }
        tree.materialize();
    }

    const BinaryMatroid before = tree.root_matroid();
    make_good(tree, &res.provenance);

    res.graph = conflict_graph(tree);
    if (!res.graph.is_forest)
        throw std::logic_error("conflict graph of a good decomposition is not a forest");
    res.forest = root_and_assign(res.graph, tree);
    eliminate_bad_elements(tree, res.forest, &res.provenance);

    const BinaryMatroid& after = tree.root_matroid();
    EqualityMode mode =
        after.size() <= 16 ? EqualityMode::Exhaustive : EqualityMode::Algebraic;
    if (before.elements() != after.elements() || !matroids_equal(before, after, mode))
        throw std::logic_error("normalization changed the root matroid (kernel defect)");

    res.tree = std::move(tree);
    return res;
}

}  // namespace matsec
