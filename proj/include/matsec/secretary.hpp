#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "matsec/decomposition.hpp"
#include "matsec/matroid.hpp"

namespace matsec {

std::uint64_t splitmix64(std::uint64_t x);

// Deterministic RNG; bounded draws use rejection so results do not depend
// on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}
    std::uint64_t next() { return gen_(); }
    std::size_t below(std::size_t n);

private:
    std::mt19937_64 gen_;
};

// Fisher-Yates shuffle of the identity arrangement of `items`.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i)
        std::swap(items[i - 1], items[rng.below(i)]);
}

// Online selection contract. Elements are offered exactly once, in arrival
// order, with position counting this algorithm's own stream; decisions are
// irrevocable.
class OnlineAlgorithm {
public:
    virtual ~OnlineAlgorithm() = default;
    virtual void begin(std::size_t n) = 0;
    // true = ACCEPT, false = REJECT
    virtual bool offer(ElementId e, double weight, std::size_t position) = 0;
};

// Rank-1 stopping rule: rejects the first floor(n/e) arrivals, then accepts
// the first element whose weight reaches the sampled maximum.
std::unique_ptr<OnlineAlgorithm> classical_secretary();

// Samples floor(n/e) arrivals, then greedily accepts any element at or
// above the sampled maximum whose addition keeps the pick independent.
std::unique_ptr<OnlineAlgorithm> sample_threshold_secretary(BinaryMatroid local);

// Vertex-assignment scheme for cycle matroids: each arriving edge goes to a
// uniformly random endpoint; each vertex runs a classical secretary over
// its assigned edges; accepted edges must stay acyclic.
std::unique_ptr<OnlineAlgorithm> graphic_secretary(GraphModel graph, Rng& rng);

using InnerFactory = std::function<std::unique_ptr<OnlineAlgorithm>(const BinaryMatroid&)>;

// Deletes one uniformly random parallel class up front and runs the inner
// algorithm on the rest. Applies only when the matroid has at least two
// parallel classes and some class of size >= 2; otherwise passes through.
std::unique_ptr<OnlineAlgorithm> parallel_class_wrapper(BinaryMatroid local, Rng& rng,
                                                        const InnerFactory& inner);

// One secretary instance per basic matroid, run on (M / A_M) restricted to
// the real elements of M.
struct LocalUnit {
    int leaf;
    std::string leaf_id;
    std::string tag;
    BinaryMatroid local;
    std::optional<GraphModel> graph;  // present for graphic leaves
};

struct CompositePlan {
    BinaryMatroid root;
    std::vector<LocalUnit> units;
    std::map<ElementId, int> dispatch;  // real element -> unit index
};

// Requires a normalized tree: no bad sum-sets and a forest conflict graph.
CompositePlan build_composite_plan(const DecompTree& tree, const RootedConflictForest& forest);

struct OnlineInstance {
    ElementSet ground;
    WeightFn weights;
    std::vector<ElementId> arrival;  // permutation of ground
    std::uint64_t seed = 0;

    static OnlineInstance random(const ElementSet& ground, WeightFn weights, std::uint64_t seed);
};

struct CompositeOutcome {
    ElementSet accepted;
    double value = 0;
    std::vector<double> per_unit_value;
};

// Streams the arrivals through the per-matroid algorithms. The returned
// union is asserted independent in the root matroid.
CompositeOutcome run_composite(const CompositePlan& plan, const OnlineInstance& inst);

struct SimulationReport {
    std::size_t trials = 0;
    double opt = 0;
    double mean_alg = 0;
    double mean_ratio = 0;  // mean_alg / opt
    double ci_halfwidth = 0;
    std::uint64_t seed = 0;
    bool opt_is_zero = false;
    std::vector<std::pair<std::string, double>> per_basic;  // unit id -> mean value
};

SimulationReport simulate_composite(const CompositePlan& plan, const WeightFn& weights,
                                    std::size_t trials, std::uint64_t seed);

// Single-matroid simulation with a named base algorithm:
// "classical", "threshold", or "graphic" (graph model required).
SimulationReport simulate_single(const BinaryMatroid& m, const std::string& algorithm,
                                 const WeightFn& weights, std::size_t trials, std::uint64_t seed,
                                 const std::optional<GraphModel>& graph = std::nullopt);

// Fraction of trials in which the classical rule picks the maximum of n
// distinct weights under a random arrival order.
double classical_max_selection_rate(std::size_t n, std::size_t trials, std::uint64_t seed);

}  // namespace matsec
