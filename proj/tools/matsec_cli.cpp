#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "matsec/io.hpp"

using namespace matsec;

namespace {

void emit(const nlohmann::ordered_json& j, const std::string& out_path) {
    std::string text = dump_json(j);
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

BinaryMatroid load_matroid_arg(const std::string& path, const std::string& name,
                               std::optional<GraphModel>* graph = nullptr) {
    if (!name.empty()) {
        ZooEntry entry = zoo(name);
        if (graph) *graph = entry.graph;
        return entry.matroid;
    }
    if (path.empty()) throw std::runtime_error("need --matroid or --name");
    return matroid_from_json(nlohmann::json::parse(read_text_file(path)));
}

DecompInput load_spec(const std::string& path) {
    if (path.empty()) throw std::runtime_error("need --spec");
    return decomposition_from_json(nlohmann::json::parse(read_text_file(path)));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"binary matroid decomposition and online selection toolkit"};
    app.require_subcommand(1);

    std::string spec_path, matroid_path, weights_path, out_path, report_path;
    std::string name, mode = "relaxed", algorithm = "composite";
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    bool exhaustive = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--spec", spec_path, "decomposition file");
        cmd->add_option("--matroid", matroid_path, "matroid file");
        cmd->add_option("--weights", weights_path, "weights CSV");
        cmd->add_option("--trials", trials, "simulation trials");
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--mode", mode, "strict|relaxed")
            ->check(CLI::IsMember({"strict", "relaxed"}));
        cmd->add_flag("--exhaustive", exhaustive, "exhaustive oracle checks");
        cmd->add_option("--out", out_path, "output file (default stdout)");
        cmd->add_option("--report", report_path, "report file (default stdout)");
        cmd->add_option("--name", name, "zoo matroid name");
    };

    CLI::App* zoo_cmd = app.add_subcommand("zoo", "emit a named matroid");
    CLI::App* compose_cmd = app.add_subcommand("compose", "build a tree and emit its root");
    CLI::App* validate_cmd = app.add_subcommand("validate", "check a decomposition");
    CLI::App* normalize_cmd = app.add_subcommand("normalize", "normalize a decomposition");
    CLI::App* circuits_cmd = app.add_subcommand("circuits", "list all circuits");
    CLI::App* opt_cmd = app.add_subcommand("opt", "max-weight independent set");
    CLI::App* simulate_cmd = app.add_subcommand("simulate", "online selection trials");
    for (CLI::App* c : {zoo_cmd, compose_cmd, validate_cmd, normalize_cmd, circuits_cmd, opt_cmd,
                        simulate_cmd})
        add_common(c);
    simulate_cmd->add_option("--algorithm", algorithm,
                             "composite|classical|threshold|graphic");

    CLI11_PARSE(app, argc, argv);

    try {
        if (zoo_cmd->parsed()) {
            if (name.empty()) throw std::runtime_error("need --name");
            emit(matroid_to_json(zoo(name).matroid), out_path);
            return 0;
        }

        if (compose_cmd->parsed()) {
            DecompInput in = load_spec(spec_path);
            DecompTree tree = build_tree(std::move(in.leaves), in.tree);
            if (mode == "strict") {
                for (int node : tree.postorder()) {
                    const DecompNode& n = tree.nodes[node];
                    if (n.is_leaf()) continue;
                    SumDiagnostics d = classify_sum(tree.nodes[n.left].matroid,
                                                    tree.nodes[n.right].matroid, SumMode::Strict);
                    if (!d.kind) {
                        for (const auto& v : d.violations)
                            std::cerr << "strict violation: " << v.detail << "\n";
                        return 1;
                    }
                }
            }
            emit(matroid_to_json(tree.root_matroid()), out_path);
            return 0;
        }

        if (validate_cmd->parsed()) {
            DecompInput in = load_spec(spec_path);
            DecompTree tree = build_tree(std::move(in.leaves), in.tree);
            tree.expected_root = std::move(in.expected_root);
            ValidationReport rep = validate_tree(tree, exhaustive);
            for (const std::string& f : rep.findings) std::cout << "finding: " << f << "\n";
            if (rep.ok()) std::cout << "ok\n";
            return rep.ok() ? 0 : 1;
        }

        if (normalize_cmd->parsed()) {
            DecompInput in = load_spec(spec_path);
            DecompTree tree = build_tree(std::move(in.leaves), in.tree);
            NormalizeResult res = normalize(std::move(tree));
            for (const std::string& w : res.warnings) std::cerr << "warning: " << w << "\n";
            emit(decomposition_to_json(res.tree, &res.provenance), out_path);
            return 0;
        }

        if (circuits_cmd->parsed()) {
            BinaryMatroid m = load_matroid_arg(matroid_path, name);
            nlohmann::ordered_json j;
            j["elements"] = m.elements();
            j["circuits"] = m.circuits();
            emit(j, out_path);
            return 0;
        }

        if (opt_cmd->parsed()) {
            BinaryMatroid m = load_matroid_arg(matroid_path, name);
            if (weights_path.empty()) throw std::runtime_error("need --weights");
            WeightFn w = weights_from_csv(read_text_file(weights_path));
            ElementSet best = greedy_opt(m, w);
            nlohmann::ordered_json j;
            j["elements"] = best;
            j["value"] = weight_of(best, w);
            emit(j, out_path);
            return 0;
        }

        if (simulate_cmd->parsed()) {
            if (weights_path.empty()) throw std::runtime_error("need --weights");
            WeightFn w = weights_from_csv(read_text_file(weights_path));
            SimulationReport rep;
            if (algorithm == "composite") {
                DecompInput in = load_spec(spec_path);
                DecompTree tree = build_tree(std::move(in.leaves), in.tree);
                NormalizeResult res = normalize(std::move(tree));
                CompositePlan plan = build_composite_plan(res.tree, res.forest);
                rep = simulate_composite(plan, w, trials, seed);
            } else {
                std::optional<GraphModel> graph;
                BinaryMatroid m = load_matroid_arg(matroid_path, name, &graph);
                rep = simulate_single(m, algorithm, w, trials, seed, graph);
            }
            std::string text = dump_json(report_to_json(rep));
            if (report_path.empty())
                std::cout << text;
            else
                write_text_file(report_path, text);
            return 0;
        }

        throw std::runtime_error("no subcommand");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
