#include "matsec/zoo.hpp"

#include <bit>
#include <map>
#include <set>
#include <stdexcept>

namespace matsec {

namespace {

std::vector<std::pair<int, int>> parse_edge_list(const std::string& s) {
    std::vector<std::pair<int, int>> edges;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
        std::size_t dash = tok.find('-');
        if (dash == std::string::npos) throw std::invalid_argument("malformed edge: " + tok);
        int u = std::stoi(tok.substr(0, dash));
        int v = std::stoi(tok.substr(dash + 1));
        if (u == v) throw std::invalid_argument("edge list must be simple (self-loop found)");
        edges.emplace_back(u, v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (edges.empty()) throw std::invalid_argument("empty edge list");
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges)
        if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
            throw std::invalid_argument("edge list must be simple (parallel edge found)");
    return edges;
}

void require_connected(const std::vector<std::pair<int, int>>& edges) {
    std::map<int, int> parent;
    for (auto [u, v] : edges) {
        parent.emplace(u, u);
        parent.emplace(v, v);
    }
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (auto [u, v] : edges) parent[find(u)] = find(v);
    std::set<int> roots;
    for (auto [v, _] : parent) roots.insert(find(v));
    if (roots.size() > 1) throw std::invalid_argument("edge list must be connected");
}

GraphModel graph_model(const std::vector<std::pair<int, int>>& edges,
                       const std::vector<ElementId>& labels) {
    GraphModel g;
    for (std::size_t i = 0; i < edges.size(); ++i) g.edges[labels[i]] = edges[i];
    return g;
}

std::vector<std::pair<int, int>> k4_edges() {
    return {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
}

std::vector<std::pair<int, int>> k33_edges() {
    return {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}};
}

std::vector<ElementId> iota_labels(std::size_t n) {
    std::vector<ElementId> l(n);
    for (std::size_t i = 0; i < n; ++i) l[i] = ElementId(i);
    return l;
}

BinaryMatroid fano() {
    // columns: the nonzero vectors of GF(2)^3 in lexicographic order
    std::vector<BitVec> rows(3, BitVec(7));
    for (std::size_t c = 0; c < 7; ++c) {
        std::size_t v = c + 1;
        rows[0].set(c, (v >> 2) & 1);
        rows[1].set(c, (v >> 1) & 1);
        rows[2].set(c, v & 1);
    }
    return BinaryMatroid::from_columns(iota_labels(7), rows);
}

BinaryMatroid r10() {
    // columns: the ten weight-3 vectors of GF(2)^5 in lexicographic order
    std::vector<std::size_t> cols;
    for (std::size_t v = 0; v < 32; ++v)
        if (std::popcount(v) == 3) cols.push_back(v);
    std::vector<BitVec> rows(5, BitVec(10));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < 5; ++r) rows[r].set(c, (cols[c] >> (4 - r)) & 1);
    return BinaryMatroid::from_columns(iota_labels(10), rows);
}

}  // namespace

BinaryMatroid graphic_matroid(const std::vector<std::pair<int, int>>& edges,
                              const std::vector<ElementId>& labels) {
    if (labels.size() != edges.size())
        throw std::invalid_argument("label count != edge count");
    std::set<int> verts;
    for (auto [u, v] : edges) {
        verts.insert(u);
        verts.insert(v);
    }
    std::map<int, std::size_t> row_of;
    std::size_t next = 0;
    for (int v : verts) row_of[v] = next++;
    // incidence matrix with the last vertex row dropped; any dropped row
    // yields the same matroid
    std::vector<BitVec> rows(verts.size() - 1, BitVec(edges.size()));
    for (std::size_t c = 0; c < edges.size(); ++c) {
        for (int v : {edges[c].first, edges[c].second}) {
            std::size_t r = row_of[v];
            if (r + 1 < verts.size()) rows[r].set(c, true);
        }
    }
    return BinaryMatroid::from_columns(labels, rows);
}

ZooEntry zoo(const std::string& name) {
    if (name == "triangle") {
        std::vector<std::pair<int, int>> e{{0, 1}, {1, 2}, {2, 0}};
        auto l = iota_labels(3);
        return {graphic_matroid(e, l), "graphic", graph_model(e, l)};
    }
    if (name == "c4") {
        std::vector<std::pair<int, int>> e{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
        auto l = iota_labels(4);
        return {graphic_matroid(e, l), "graphic", graph_model(e, l)};
    }
    if (name == "k4") {
        auto e = k4_edges();
        auto l = iota_labels(6);
        return {graphic_matroid(e, l), "graphic", graph_model(e, l)};
    }
    if (name == "k33") {
        auto e = k33_edges();
        auto l = iota_labels(9);
        return {graphic_matroid(e, l), "graphic", graph_model(e, l)};
    }
    if (name == "r10") return {r10(), "r10", std::nullopt};
    if (name == "f7") return {fano(), "f7", std::nullopt};
    if (name == "f7dual") return {fano().dual(), "f7dual", std::nullopt};
    if (name.rfind("graphic:", 0) == 0) {
        auto e = parse_edge_list(name.substr(8));
        require_connected(e);
        auto l = iota_labels(e.size());
        return {graphic_matroid(e, l), "graphic", graph_model(e, l)};
    }
    if (name.rfind("cographic:", 0) == 0) {
        auto e = parse_edge_list(name.substr(10));
        require_connected(e);
        auto l = iota_labels(e.size());
        return {graphic_matroid(e, l).dual(), "cographic", std::nullopt};
    }
    throw std::invalid_argument("unknown zoo matroid: " + name);
}

}  // namespace matsec
