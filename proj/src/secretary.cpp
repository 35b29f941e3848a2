#include "matsec/secretary.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace matsec {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::size_t Rng::below(std::size_t n) {
    if (n == 0) throw std::invalid_argument("empty range");
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
    std::uint64_t v;
    do {
        v = gen_();
    } while (v >= limit);
    return std::size_t(v % n);
}

namespace {

std::size_t sample_length(std::size_t n) {
    return std::size_t(double(n) / std::exp(1.0));
}

// incremental GF(2) elimination guard for accepted sets
struct IndependenceGuard {
    const BinaryMatroid* m = nullptr;
    std::vector<BitVec> reduced;

    bool can_add(ElementId e) const {
        BitVec v = m->column(e);
        for (const auto& b : reduced) {
            std::size_t p = b.lowest();
            if (p < v.size() && v.get(p)) v ^= b;
        }
        return v.any();
    }

    void add(ElementId e) {
        BitVec v = m->column(e);
        for (const auto& b : reduced) {
            std::size_t p = b.lowest();
            if (p < v.size() && v.get(p)) v ^= b;
        }
        reduced.push_back(std::move(v));
    }
};

class ClassicalSecretary final : public OnlineAlgorithm {
public:
    void begin(std::size_t n) override {
        sample_ = sample_length(n);
        best_ = -std::numeric_limits<double>::infinity();
        done_ = false;
    }

    bool offer(ElementId, double w, std::size_t pos) override {
        if (pos < sample_) {
            best_ = std::max(best_, w);
            return false;
        }
        if (done_ || w < best_) return false;
        done_ = true;
        return true;
    }

private:
    std::size_t sample_ = 0;
    double best_ = 0;
    bool done_ = false;
};

class SampleThresholdSecretary final : public OnlineAlgorithm {
public:
    explicit SampleThresholdSecretary(BinaryMatroid local) : local_(std::move(local)) {
        guard_.m = &local_;
    }

    void begin(std::size_t n) override {
        sample_ = sample_length(n);
        threshold_ = -std::numeric_limits<double>::infinity();
        guard_.reduced.clear();
    }

    bool offer(ElementId e, double w, std::size_t pos) override {
        if (pos < sample_) {
            threshold_ = std::max(threshold_, w);
            return false;
        }
        if (w < threshold_ || !guard_.can_add(e)) return false;
        guard_.add(e);
        return true;
    }

private:
    BinaryMatroid local_;
    IndependenceGuard guard_;
    std::size_t sample_ = 0;
    double threshold_ = 0;
};

class GraphicSecretary final : public OnlineAlgorithm {
public:
    GraphicSecretary(GraphModel graph, Rng& rng) : graph_(std::move(graph)), rng_(&rng) {
        for (const auto& [e, uv] : graph_.edges) {
            vertex_state_.emplace(uv.first, VertexState{});
            vertex_state_.emplace(uv.second, VertexState{});
        }
        for (const auto& [v, _] : vertex_state_) uf_[v] = v;
    }

    void begin(std::size_t n) override { sample_ = sample_length(n); }

    bool offer(ElementId e, double w, std::size_t pos) override {
        auto it = graph_.edges.find(e);
        if (it == graph_.edges.end()) return false;
        auto [u, v] = it->second;
        if (u == v) return false;  // loop after contraction
        int assigned = rng_->below(2) == 0 ? u : v;
        VertexState& vs = vertex_state_[assigned];
        if (pos < sample_) {
            vs.best = std::max(vs.best, w);
            return false;
        }
        if (vs.stopped || w < vs.best) return false;
        vs.stopped = true;
        int ru = find(u), rv = find(v);
        if (ru == rv) return false;  // would close a cycle
        uf_[ru] = rv;
        return true;
    }

private:
    struct VertexState {
        double best = -std::numeric_limits<double>::infinity();
        bool stopped = false;
    };

    int find(int v) {
        while (uf_[v] != v) v = uf_[v] = uf_[uf_[v]];
        return v;
    }

    GraphModel graph_;
    Rng* rng_;
    std::map<int, VertexState> vertex_state_;
    std::map<int, int> uf_;
    std::size_t sample_ = 0;
};

class ParallelClassWrapper final : public OnlineAlgorithm {
public:
    ParallelClassWrapper(BinaryMatroid local, Rng& rng, const InnerFactory& inner) {
        auto classes = local.parallel_classes();
        std::size_t k = classes.size();
        std::size_t pick = rng.below(k);
        removed_ = classes[pick];
        inner_ = inner(local.deleted(removed_));
    }

    void begin(std::size_t n) override { inner_->begin(n - removed_.size()); }

    bool offer(ElementId e, double w, std::size_t) override {
        if (set_contains(removed_, e)) return false;
        return inner_->offer(e, w, inner_pos_++);
    }

private:
    ElementSet removed_;
    std::unique_ptr<OnlineAlgorithm> inner_;
    std::size_t inner_pos_ = 0;
};

}  // namespace

std::unique_ptr<OnlineAlgorithm> classical_secretary() {
    return std::make_unique<ClassicalSecretary>();
}

std::unique_ptr<OnlineAlgorithm> sample_threshold_secretary(BinaryMatroid local) {
    return std::make_unique<SampleThresholdSecretary>(std::move(local));
}

std::unique_ptr<OnlineAlgorithm> graphic_secretary(GraphModel graph, Rng& rng) {
    return std::make_unique<GraphicSecretary>(std::move(graph), rng);
}

std::unique_ptr<OnlineAlgorithm> parallel_class_wrapper(BinaryMatroid local, Rng& rng,
                                                        const InnerFactory& inner) {
    auto classes = local.parallel_classes();
    bool applies = classes.size() >= 2 && std::any_of(classes.begin(), classes.end(),
                                                      [](const ElementSet& c) {
                                                          return c.size() >= 2;
                                                      });
    if (!applies) return inner(local);
    return std::make_unique<ParallelClassWrapper>(std::move(local), rng, inner);
}

CompositePlan build_composite_plan(const DecompTree& tree, const RootedConflictForest& forest) {
    if (!bad_sum_sets(tree).empty())
        throw std::invalid_argument("decomposition has bad sum-sets; normalize first");
    if (!conflict_graph(tree).is_forest)
        throw std::invalid_argument("conflict graph is not a forest; normalize first");
    if (forest.parent.size() != tree.leaves.size())
        throw std::invalid_argument("forest does not match the tree");

    CompositePlan plan;
    plan.root = tree.root_matroid();
    const ElementSet& real = plan.root.elements();

    for (std::size_t l = 0; l < tree.leaves.size(); ++l) {
        const Leaf& leaf = tree.leaves[l];
        const ElementSet& a = forest.contraction[l];
        ElementSet keep = set_inter(leaf.matroid.elements(), real);
        ElementSet del = set_diff(set_diff(leaf.matroid.elements(), a), keep);
        LocalUnit unit;
        unit.leaf = int(l);
        unit.leaf_id = leaf.id;
        unit.tag = leaf.tag;
        unit.local = leaf.matroid.minor(del, a);
        if (leaf.tag == "graphic" && leaf.graph) {
            // contract the A_M edges in the graph model, keep real edges
            std::map<int, int> uf;
            for (const auto& [e, uv] : leaf.graph->edges) {
                uf.emplace(uv.first, uv.first);
                uf.emplace(uv.second, uv.second);
            }
            auto find = [&](int v) {
                while (uf[v] != v) v = uf[v] = uf[uf[v]];
                return v;
            };
            for (ElementId e : a) {
                auto [u, v] = leaf.graph->edges.at(e);
                uf[find(u)] = find(v);
            }
            GraphModel g;
            for (ElementId e : unit.local.elements()) {
                auto [u, v] = leaf.graph->edges.at(e);
                g.edges[e] = {find(u), find(v)};
            }
            unit.graph = std::move(g);
        }
        for (ElementId e : unit.local.elements()) {
            if (!plan.dispatch.emplace(e, int(plan.units.size())).second)
                throw std::logic_error("element dispatched to two basic matroids");
        }
        plan.units.push_back(std::move(unit));
    }
    for (ElementId e : real)
        if (!plan.dispatch.count(e)) throw std::logic_error("real element has no dispatch target");
    return plan;
}

OnlineInstance OnlineInstance::random(const ElementSet& ground, WeightFn weights,
                                      std::uint64_t seed) {
    OnlineInstance inst;
    inst.ground = ground;
    inst.weights = std::move(weights);
    inst.seed = seed;
    inst.arrival = ground;
    Rng rng(seed);
    shuffle(inst.arrival, rng);
    return inst;
}

namespace {

using UnitAlgFactory =
    std::function<std::unique_ptr<OnlineAlgorithm>(const LocalUnit&, Rng&)>;

std::unique_ptr<OnlineAlgorithm> default_algorithm(const LocalUnit& unit, Rng& rng) {
    if (unit.tag == "graphic" && unit.graph) return graphic_secretary(*unit.graph, rng);
    return parallel_class_wrapper(unit.local, rng,
                                  [](const BinaryMatroid& m) {
                                      return sample_threshold_secretary(m);
                                  });
}

CompositeOutcome run_with(const CompositePlan& plan, const OnlineInstance& inst,
                          const UnitAlgFactory& factory) {
    if (inst.ground != plan.root.elements())
        throw std::invalid_argument("instance ground set differs from the root matroid");

    Rng alg_rng(splitmix64(inst.seed ^ 0xa5a5a5a5a5a5a5a5ULL));
    std::vector<std::unique_ptr<OnlineAlgorithm>> algs;
    std::vector<std::size_t> positions(plan.units.size(), 0);
    std::vector<IndependenceGuard> guards(plan.units.size());
    for (std::size_t u = 0; u < plan.units.size(); ++u) {
        algs.push_back(factory(plan.units[u], alg_rng));
        algs.back()->begin(plan.units[u].local.size());
        guards[u].m = &plan.units[u].local;
    }

    CompositeOutcome out;
    out.per_unit_value.assign(plan.units.size(), 0.0);
    for (ElementId e : inst.arrival) {
        auto it = plan.dispatch.find(e);
        if (it == plan.dispatch.end())
            throw std::logic_error("arriving element has no dispatch target");
        std::size_t u = std::size_t(it->second);
        double w = inst.weights.at(e);
        bool accept = algs[u]->offer(e, w, positions[u]++);
        if (!accept) continue;
        if (!guards[u].can_add(e))
            throw std::logic_error("algorithm accepted a dependent element (contract violation)");
        guards[u].add(e);
        out.accepted.push_back(e);
        out.value += w;
        out.per_unit_value[u] += w;
    }
    out.accepted = make_set(std::move(out.accepted));
    if (plan.root.rank_of(out.accepted) != out.accepted.size())
        throw std::logic_error("composite output is dependent in the root matroid");
    return out;
}

SimulationReport simulate_with(const CompositePlan& plan, const WeightFn& weights,
                               std::size_t trials, std::uint64_t seed,
                               const UnitAlgFactory& factory) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    SimulationReport rep;
    rep.trials = trials;
    rep.seed = seed;
    ElementSet opt_set = greedy_opt(plan.root, weights);
    rep.opt = weight_of(opt_set, weights);
    rep.opt_is_zero = rep.opt == 0.0;

    std::vector<double> values(trials);
    std::vector<double> unit_sums(plan.units.size(), 0.0);
    for (std::size_t t = 0; t < trials; ++t) {
        std::uint64_t trial_seed = splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (t + 1)));
        OnlineInstance inst = OnlineInstance::random(plan.root.elements(), weights, trial_seed);
        CompositeOutcome o = run_with(plan, inst, factory);
        values[t] = o.value;
        for (std::size_t u = 0; u < plan.units.size(); ++u) unit_sums[u] += o.per_unit_value[u];
    }
    double sum = 0;
    for (double v : values) sum += v;
    rep.mean_alg = sum / double(trials);
    double var = 0;
    for (double v : values) var += (v - rep.mean_alg) * (v - rep.mean_alg);
    double sd = trials > 1 ? std::sqrt(var / double(trials - 1)) : 0.0;
    if (!rep.opt_is_zero) {
        rep.mean_ratio = rep.mean_alg / rep.opt;
        rep.ci_halfwidth = 1.96 * sd / (rep.opt * std::sqrt(double(trials)));
    }
    for (std::size_t u = 0; u < plan.units.size(); ++u)
        rep.per_basic.emplace_back(plan.units[u].leaf_id, unit_sums[u] / double(trials));
    return rep;
}

}  // namespace

CompositeOutcome run_composite(const CompositePlan& plan, const OnlineInstance& inst) {
    return run_with(plan, inst, default_algorithm);
}

SimulationReport simulate_composite(const CompositePlan& plan, const WeightFn& weights,
                                    std::size_t trials, std::uint64_t seed) {
    return simulate_with(plan, weights, trials, seed, default_algorithm);
}

SimulationReport simulate_single(const BinaryMatroid& m, const std::string& algorithm,
                                 const WeightFn& weights, std::size_t trials, std::uint64_t seed,
                                 const std::optional<GraphModel>& graph) {
    CompositePlan plan;
    plan.root = m;
    LocalUnit unit;
    unit.leaf = 0;
    unit.leaf_id = "matroid";
    unit.tag = "custom";
    unit.local = m;
    unit.graph = graph;
    for (ElementId e : m.elements()) plan.dispatch[e] = 0;
    plan.units.push_back(std::move(unit));

    UnitAlgFactory factory;
    if (algorithm == "classical") {
        factory = [](const LocalUnit&, Rng&) { return classical_secretary(); };
    } else if (algorithm == "threshold") {
        factory = [](const LocalUnit& u, Rng& rng) {
            return parallel_class_wrapper(u.local, rng, [](const BinaryMatroid& lm) {
                return sample_threshold_secretary(lm);
            });
        };
    } else if (algorithm == "graphic") {
        if (!graph) throw std::invalid_argument("graphic algorithm needs a graph model");
        factory = [](const LocalUnit& u, Rng& rng) { return graphic_secretary(*u.graph, rng); };
    } else {
        throw std::invalid_argument("unknown algorithm: " + algorithm);
    }
    return simulate_with(plan, weights, trials, seed, factory);
}

double classical_max_selection_rate(std::size_t n, std::size_t trials, std::uint64_t seed) {
    if (n < 1 || trials < 1) throw std::invalid_argument("n and trials must be >= 1");
    std::size_t hits = 0;
    std::vector<ElementId> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = ElementId(i);
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (t + 1))));
        shuffle(order, rng);
        auto alg = classical_secretary();
        alg->begin(n);
        for (std::size_t pos = 0; pos < n; ++pos) {
            if (alg->offer(order[pos], double(order[pos]) + 1.0, pos)) {
                if (order[pos] == ElementId(n - 1)) ++hits;
                break;
            }
        }
    }
    return double(hits) / double(trials);
}

}  // namespace matsec
