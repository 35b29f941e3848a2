#include "matsec/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace matsec {

using nlohmann::json;
using nlohmann::ordered_json;

nlohmann::ordered_json matroid_to_json(const BinaryMatroid& m) {
    ordered_json j;
    j["elements"] = m.elements();
    std::vector<std::string> rows;
    for (const auto& r : m.matrix().rows) rows.push_back(r.to_string());
    j["rows"] = rows;
    return j;
}

BinaryMatroid matroid_from_json(const json& j) {
    if (!j.is_object() || !j.contains("elements") || !j.contains("rows"))
        throw std::invalid_argument("matroid object needs \"elements\" and \"rows\"");
    std::vector<ElementId> labels = j.at("elements").get<std::vector<ElementId>>();
    std::vector<BitVec> rows;
    for (const auto& s : j.at("rows")) rows.push_back(BitVec::from_string(s.get<std::string>()));
    return BinaryMatroid::from_columns(labels, rows);
}

BinaryMatroid relabel(const BinaryMatroid& m, const std::vector<ElementId>& new_labels) {
    if (new_labels.size() != m.size()) throw std::invalid_argument("relabel size mismatch");
    std::vector<BitVec> rows(m.rank(), BitVec(m.size()));
    const ElementSet& old_labels = m.elements();
    for (std::size_t c = 0; c < old_labels.size(); ++c) {
        BitVec col = m.column(old_labels[c]);
        for (std::size_t r = 0; r < rows.size(); ++r) rows[r].set(c, col.get(r));
    }
    return BinaryMatroid::from_columns(new_labels, rows);
}

GraphModel relabel(const GraphModel& g, const ElementSet& old_labels,
                   const std::vector<ElementId>& new_labels) {
    if (new_labels.size() != old_labels.size())
        throw std::invalid_argument("relabel size mismatch");
    GraphModel out;
    for (std::size_t i = 0; i < old_labels.size(); ++i)
        out.edges[new_labels[i]] = g.edges.at(old_labels[i]);
    return out;
}

namespace {

Leaf leaf_from_json(const json& j) {
    Leaf leaf;
    leaf.id = j.at("id").get<std::string>();
    leaf.tag = j.value("class", std::string("custom"));

    const json& mj = j.at("matroid");
    if (mj.is_string()) {
        ZooEntry entry = zoo(mj.get<std::string>());
        leaf.matroid = std::move(entry.matroid);
        leaf.graph = std::move(entry.graph);
        if (!j.contains("class")) leaf.tag = entry.tag;
    } else {
        leaf.matroid = matroid_from_json(mj);
    }

    if (j.contains("relabel")) {
        auto labels = j.at("relabel").get<std::vector<ElementId>>();
        if (leaf.graph) leaf.graph = relabel(*leaf.graph, leaf.matroid.elements(), labels);
        leaf.matroid = relabel(leaf.matroid, labels);
    }

    if (j.contains("graph")) {
        GraphModel g;
        for (const auto& [key, uv] : j.at("graph").items()) {
            ElementId e = ElementId(std::stoul(key));
            if (!leaf.matroid.has_element(e))
                throw std::invalid_argument("graph entry for unknown element " + key);
            g.edges[e] = {uv.at(0).get<int>(), uv.at(1).get<int>()};
        }
        if (g.edges.size() != leaf.matroid.size())
            throw std::invalid_argument("graph must cover every element of leaf " + leaf.id);
        leaf.graph = std::move(g);
    }
    return leaf;
}

TreeSpecPtr tree_from_json(const json& j) {
    if (j.is_string()) return TreeSpec::make_leaf(j.get<std::string>());
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument("tree nodes are [kind, subtree, subtree]");
    auto kind = sum_kind_from_string(j.at(0).get<std::string>());
    if (!kind) throw std::invalid_argument("unknown sum kind: " + j.at(0).get<std::string>());
    return TreeSpec::make_sum(*kind, tree_from_json(j.at(1)), tree_from_json(j.at(2)));
}

ordered_json tree_to_json(const DecompTree& tree, int node) {
    const DecompNode& n = tree.nodes[node];
    if (n.is_leaf()) return tree.leaves[n.leaf].id;
    ordered_json j = ordered_json::array();
    j.push_back(to_string(n.kind));
    j.push_back(tree_to_json(tree, n.left));
    j.push_back(tree_to_json(tree, n.right));
    return j;
}

}  // namespace

DecompInput decomposition_from_json(const json& j) {
    if (!j.is_object() || !j.contains("leaves") || !j.contains("tree"))
        throw std::invalid_argument("decomposition needs \"leaves\" and \"tree\"");
    DecompInput in;
    for (const auto& lj : j.at("leaves")) in.leaves.push_back(leaf_from_json(lj));
    in.tree = tree_from_json(j.at("tree"));
    if (j.contains("root")) in.expected_root = matroid_from_json(j.at("root"));
    return in;
}

nlohmann::ordered_json decomposition_to_json(const DecompTree& tree,
                                             const std::vector<MoveRecord>* provenance,
                                             bool include_root) {
    ordered_json j;
    j["leaves"] = ordered_json::array();
    for (const Leaf& leaf : tree.leaves) {
        ordered_json lj;
        lj["id"] = leaf.id;
        lj["class"] = leaf.tag;
        lj["matroid"] = matroid_to_json(leaf.matroid);
        if (leaf.graph) {
            ordered_json gj = ordered_json::object();
            for (const auto& [e, uv] : leaf.graph->edges)
                gj[std::to_string(e)] = {uv.first, uv.second};
            lj["graph"] = std::move(gj);
        }
        j["leaves"].push_back(std::move(lj));
    }
    j["tree"] = tree_to_json(tree, tree.root);
    if (include_root) j["root"] = matroid_to_json(tree.root_matroid());
    if (provenance) {
        ordered_json pj = ordered_json::array();
        for (const MoveRecord& m : *provenance) {
            ordered_json mj;
            mj["element"] = m.element;
            mj["from"] = m.from_leaf;
            mj["to"] = m.to_leaf;
            mj["witness"] = m.witness;
            mj["stage"] = m.stage;
            pj.push_back(std::move(mj));
        }
        j["provenance"] = std::move(pj);
    }
    return j;
}

WeightFn weights_from_csv(const std::string& text) {
    std::map<ElementId, double> w;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("weights line " + std::to_string(lineno) +
                                        ": expected element_id,weight");
        ElementId e = ElementId(std::stoul(line.substr(0, comma)));
        double weight = std::stod(line.substr(comma + 1));
        if (!w.emplace(e, weight).second)
            throw std::invalid_argument("weights line " + std::to_string(lineno) +
                                        ": duplicate element " + std::to_string(e));
    }
    return WeightFn(std::move(w));
}

std::string weights_to_csv(const WeightFn& w) {
    std::ostringstream out;
    out.precision(17);
    for (const auto& [e, weight] : w.entries()) out << e << ',' << weight << '\n';
    return out.str();
}

nlohmann::ordered_json report_to_json(const SimulationReport& rep) {
    ordered_json j;
    j["trials"] = rep.trials;
    j["opt"] = rep.opt;
    j["mean_alg"] = rep.mean_alg;
    if (rep.opt_is_zero) {
        j["mean_ratio"] = nullptr;
        j["ci_halfwidth"] = nullptr;
        j["ratio_defined"] = false;
    } else {
        j["mean_ratio"] = rep.mean_ratio;
        j["ci_halfwidth"] = rep.ci_halfwidth;
        j["ratio_defined"] = true;
    }
    j["seed"] = rep.seed;
    j["per_basic"] = ordered_json::array();
    for (const auto& [id, mean] : rep.per_basic) {
        ordered_json uj;
        uj["id"] = id;
        uj["mean_alg"] = mean;
        j["per_basic"].push_back(std::move(uj));
    }
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string dump_json(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace matsec
