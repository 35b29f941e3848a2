#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "matsec/decomposition.hpp"
#include "matsec/secretary.hpp"

namespace matsec {

// Matroid file: { "elements": [ids in column order], "rows": ["0110...", ...] }
// with bit i of each row corresponding to column i. Writing emits the RREF
// rows over the sorted element labels, so write/read round-trips are
// bit-exact.
nlohmann::ordered_json matroid_to_json(const BinaryMatroid& m);
BinaryMatroid matroid_from_json(const nlohmann::json& j);

// Decomposition file:
// {
//   "leaves": [ { "id": str, "class": tag,
//                 "matroid": <inline matroid object or zoo name string>,
//                 "relabel": [ids per canonical column]   (optional)
//                 "graph": { "<element>": [u, v], ... }   (optional) } ],
//   "tree": nested ["ONE"|"TWO"|"THREE", subtree, subtree] with leaf-id
//           strings at the leaves,
//   "root": inline matroid    (optional; checked by validation)
//   "provenance": [...]       (optional; emitted by normalize)
// }
struct DecompInput {
    std::vector<Leaf> leaves;
    TreeSpecPtr tree;
    std::optional<BinaryMatroid> expected_root;
};

DecompInput decomposition_from_json(const nlohmann::json& j);
nlohmann::ordered_json decomposition_to_json(const DecompTree& tree,
                                             const std::vector<MoveRecord>* provenance = nullptr,
                                             bool include_root = true);

// Weights file: one `element_id,weight` pair per line, nonnegative decimals.
WeightFn weights_from_csv(const std::string& text);
std::string weights_to_csv(const WeightFn& w);

nlohmann::ordered_json report_to_json(const SimulationReport& rep);

// Relabels columns: new_labels[i] replaces the i-th element in label order.
BinaryMatroid relabel(const BinaryMatroid& m, const std::vector<ElementId>& new_labels);
GraphModel relabel(const GraphModel& g, const ElementSet& old_labels,
                   const std::vector<ElementId>& new_labels);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Canonical serialization used for every artifact the CLI writes: two-space
// indentation and a trailing newline, so identical runs are byte-identical.
std::string dump_json(const nlohmann::ordered_json& j);

}  // namespace matsec
