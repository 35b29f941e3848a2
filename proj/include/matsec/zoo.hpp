#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "matsec/matroid.hpp"

namespace matsec {

// Edge endpoints per element, for matroids that come from a graph. Kept
// alongside graphic leaves so the graphic secretary has a vertex model.
struct GraphModel {
    std::map<ElementId, std::pair<int, int>> edges;
};

struct ZooEntry {
    BinaryMatroid matroid;
    std::string tag;  // graphic, cographic, r10, f7, f7dual, custom
    std::optional<GraphModel> graph;
};

// Named builders with canonical labels 0..n-1:
//   triangle, c4, k4, k33, r10, f7, f7dual,
//   graphic:u-v,u-v,...   cographic:u-v,u-v,...
ZooEntry zoo(const std::string& name);

// Cycle matroid of a simple connected graph: GF(2) vertex-edge incidence
// with the last vertex row dropped. Labels follow the edge list order.
BinaryMatroid graphic_matroid(const std::vector<std::pair<int, int>>& edges,
                              const std::vector<ElementId>& labels);

}  // namespace matsec
