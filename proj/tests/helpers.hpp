#pragma once

#include <map>
#include <set>
#include <vector>

#include "matsec/matroid.hpp"
#include "matsec/secretary.hpp"
#include "matsec/zoo.hpp"

namespace matsec::testing {

inline ElementSet subset_of(const ElementSet& ground, unsigned mask) {
    ElementSet s;
    for (std::size_t i = 0; i < ground.size(); ++i)
        if (mask & (1u << i)) s.push_back(ground[i]);
    return s;
}

inline std::vector<ElementSet> all_subsets(const ElementSet& ground) {
    std::vector<ElementSet> out;
    for (unsigned mask = 0; mask < (1u << ground.size()); ++mask)
        out.push_back(subset_of(ground, mask));
    return out;
}

// minimal dependent sets by direct enumeration
inline std::vector<ElementSet> brute_circuits(const BinaryMatroid& m) {
    std::vector<ElementSet> dependent;
    for (const ElementSet& s : all_subsets(m.elements()))
        if (!s.empty() && !m.is_independent(s)) dependent.push_back(s);
    std::vector<ElementSet> out;
    for (const ElementSet& c : dependent) {
        bool minimal = true;
        for (const ElementSet& d : dependent)
            if (d != c && is_subset(d, c)) minimal = false;
        if (minimal) out.push_back(c);
    }
    return out;
}

inline ElementSet brute_opt(const BinaryMatroid& m, const WeightFn& w) {
    ElementSet best;
    double best_w = -1;
    for (const ElementSet& s : all_subsets(m.elements())) {
        if (!m.is_independent(s)) continue;
        double v = weight_of(s, w);
        if (v > best_w) {
            best_w = v;
            best = s;
        }
    }
    return best;
}

// acyclicity of an edge subset, as the independence oracle for cycle matroids
inline bool graph_acyclic(const GraphModel& g, const ElementSet& edges) {
    std::map<int, int> uf;
    for (const auto& [e, uv] : g.edges) {
        uf.emplace(uv.first, uv.first);
        uf.emplace(uv.second, uv.second);
    }
    auto find = [&](int v) {
        while (uf[v] != v) v = uf[v] = uf[uf[v]];
        return v;
    };
    for (ElementId e : edges) {
        auto [u, v] = g.edges.at(e);
        int ru = find(u), rv = find(v);
        if (ru == rv) return false;
        uf[ru] = rv;
    }
    return true;
}

inline WeightFn random_weights(const ElementSet& ground, Rng& rng, double scale = 100.0) {
    std::map<ElementId, double> w;
    for (ElementId e : ground) w[e] = double(rng.below(std::size_t(scale)) + 1);
    return WeightFn(std::move(w));
}

}  // namespace matsec::testing
