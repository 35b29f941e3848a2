#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace matsec {

// Globally unique, stable element label. Shared elements of two matroids in
// a sum carry the same id in both; no operation ever renumbers.
using ElementId = std::uint32_t;

// Element sets are kept sorted and duplicate-free.
using ElementSet = std::vector<ElementId>;

inline ElementSet make_set(std::vector<ElementId> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline bool set_contains(const ElementSet& s, ElementId e) {
    return std::binary_search(s.begin(), s.end(), e);
}

inline ElementSet set_union(const ElementSet& a, const ElementSet& b) {
    ElementSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline ElementSet set_inter(const ElementSet& a, const ElementSet& b) {
    ElementSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline ElementSet set_diff(const ElementSet& a, const ElementSet& b) {
    ElementSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline ElementSet set_symdiff(const ElementSet& a, const ElementSet& b) {
    ElementSet r;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(r));
    return r;
}

inline bool is_subset(const ElementSet& a, const ElementSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace matsec
