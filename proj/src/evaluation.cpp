#include "argstruct/evaluation.hpp"

#include <algorithm>
#include <set>

#include "argstruct/rng.hpp"

namespace argstruct {

namespace {

void check_same_nodes(const PredictedStructure& predicted, const Argument& gold) {
    std::set<std::string> gold_ids;
    for (const auto& n : gold.nodes) gold_ids.insert(n.id);
    std::set<std::string> pred_ids;
    for (const auto& e : predicted.edges) {
        pred_ids.insert(e.child);
        pred_ids.insert(e.parent);
    }
    for (const auto& id : pred_ids) {
        if (!gold_ids.count(id)) {
            throw Error("sim_score: predicted structure references node '" + id +
                        "' absent from gold argument '" + gold.id + "'");
        }
    }
    if (gold.edges.empty()) {
        throw Error("sim_score: gold argument '" + gold.id + "' has no edges");
    }
}

}  // namespace

double sim_score(const PredictedStructure& predicted, const Argument& gold) {
    check_same_nodes(predicted, gold);
    std::set<std::pair<std::string, std::string>> gold_edges;
    for (const auto& e : gold.edges) gold_edges.insert({e.from, e.to});
    size_t common = 0;
    for (const auto& e : predicted.edges) {
        common += gold_edges.count({e.child, e.parent});
    }
    return static_cast<double>(common) / static_cast<double>(gold_edges.size());
}

double labeled_sim_score(const PredictedStructure& predicted, const Argument& gold) {
    check_same_nodes(predicted, gold);
    std::set<std::tuple<std::string, std::string, Relation>> gold_edges;
    for (const auto& e : gold.edges) gold_edges.insert({e.from, e.to, e.label});
    size_t common = 0;
    for (const auto& e : predicted.edges) {
        if (!e.label) throw Error("labeled_sim_score: predicted edge lacks a label");
        common += gold_edges.count({e.child, e.parent, *e.label});
    }
    return static_cast<double>(common) / static_cast<double>(gold_edges.size());
}

namespace {

// Uniform rooted labeled tree on n nodes as a parent function: decode a
// uniform Prufer sequence, then root at a uniform node. n^(n-2) unrooted
// trees x n roots = n^(n-1) rooted trees, each equally likely.
std::vector<int> sample_rooted_tree(int n, Rng& rng) {
    std::vector<int> parent(static_cast<size_t>(n), -1);
    if (n == 1) return parent;
    if (n == 2) {
        int root = static_cast<int>(rng.bounded(2));
        parent[static_cast<size_t>(1 - root)] = root;
        return parent;
    }

    std::vector<int> prufer(static_cast<size_t>(n - 2));
    for (int& v : prufer) v = static_cast<int>(rng.bounded(static_cast<uint64_t>(n)));

    // standard Prufer decode into an undirected edge list
    std::vector<int> degree(static_cast<size_t>(n), 1);
    for (int v : prufer) degree[static_cast<size_t>(v)]++;
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    std::set<int> leaves;
    for (int v = 0; v < n; ++v) {
        if (degree[static_cast<size_t>(v)] == 1) leaves.insert(v);
    }
    for (int v : prufer) {
        int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        adj[static_cast<size_t>(leaf)].push_back(v);
        adj[static_cast<size_t>(v)].push_back(leaf);
        if (--degree[static_cast<size_t>(v)] == 1) leaves.insert(v);
    }
    int a = *leaves.begin();
    int b = *std::next(leaves.begin());
    adj[static_cast<size_t>(a)].push_back(b);
    adj[static_cast<size_t>(b)].push_back(a);

    // orient every edge toward a uniform root
    int root = static_cast<int>(rng.bounded(static_cast<uint64_t>(n)));
    std::vector<int> stack = {root};
    std::vector<char> seen(static_cast<size_t>(n), 0);
    seen[static_cast<size_t>(root)] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[static_cast<size_t>(u)]) {
            if (!seen[static_cast<size_t>(v)]) {
                seen[static_cast<size_t>(v)] = 1;
                parent[static_cast<size_t>(v)] = u;
                stack.push_back(v);
            }
        }
    }
    return parent;
}

}  // namespace

RandomBaselineResult random_baseline(int n, long trials, uint64_t seed, bool parallel) {
    if (n < 2) throw Error("random_baseline: n must be at least 2");
    if (trials < 1) throw Error("random_baseline: trials must be positive");

    // fixed gold tree: star rooted at node 0 (the law holds for any gold tree)
    std::vector<int> gold(static_cast<size_t>(n), 0);
    gold[0] = -1;

    long long common_total = 0;
#ifdef _OPENMP
    #pragma omp parallel for reduction(+ : common_total) schedule(static) if (parallel)
#endif
    for (long t = 0; t < trials; ++t) {
        Rng rng(Rng::mix(seed, static_cast<uint64_t>(t)));
        std::vector<int> parent = sample_rooted_tree(n, rng);
        for (int v = 0; v < n; ++v) {
            if (parent[static_cast<size_t>(v)] >= 0 &&
                parent[static_cast<size_t>(v)] == gold[static_cast<size_t>(v)]) {
                ++common_total;
            }
        }
    }

    RandomBaselineResult out;
    out.analytic = 1.0 / static_cast<double>(n);
    out.trials = trials;
    out.monte_carlo = static_cast<double>(common_total) /
                      (static_cast<double>(trials) * static_cast<double>(n - 1));
    return out;
}

ClassifierReport classifier_metrics(const std::vector<PairPrediction>& predictions,
                                    const std::vector<std::string>& classes) {
    if (predictions.empty()) throw Error("classifier_metrics: no predictions");
    size_t k = classes.size();
    for (const auto& p : predictions) {
        if (p.gold < 0 || static_cast<size_t>(p.gold) >= k || p.predicted < 0 ||
            static_cast<size_t>(p.predicted) >= k) {
            throw Error("classifier_metrics: class index out of range");
        }
    }

    std::vector<size_t> gold_count(k, 0), pred_count(k, 0), hit_count(k, 0);
    std::vector<double> conf_sum(k, 0.0);
    std::vector<size_t> conf_n(k, 0);
    size_t correct = 0;
    for (const auto& p : predictions) {
        gold_count[static_cast<size_t>(p.gold)]++;
        pred_count[static_cast<size_t>(p.predicted)]++;
        if (p.gold == p.predicted) {
            hit_count[static_cast<size_t>(p.gold)]++;
            ++correct;
        }
        if (p.support_score) {
            conf_sum[static_cast<size_t>(p.gold)] += *p.support_score;
            conf_n[static_cast<size_t>(p.gold)]++;
        }
    }

    ClassifierReport rep;
    rep.classes = classes;
    rep.pairs = predictions.size();
    rep.accuracy = static_cast<double>(correct) / static_cast<double>(predictions.size());
    for (size_t c = 0; c < k; ++c) {
        ClassMetrics m;
        if (conf_n[c] > 0) m.confidence = conf_sum[c] / static_cast<double>(conf_n[c]);
        if (gold_count[c] > 0) {
            m.recall = static_cast<double>(hit_count[c]) / static_cast<double>(gold_count[c]);
        }
        if (pred_count[c] > 0) {
            m.precision = static_cast<double>(hit_count[c]) / static_cast<double>(pred_count[c]);
        }
        rep.per_class[classes[c]] = m;
    }
    return rep;
}

void SimReport::add(int nodes, double sim) {
    auto& g = by_nodes[nodes];
    g.nodes = nodes;
    g.arguments += 1;
    g.mean_sim += sim;  // running sum until finalize()
    arguments += 1;
    mean_sim += sim;
}

void SimReport::finalize() {
    for (auto& [n, g] : by_nodes) {
        if (g.arguments > 0) g.mean_sim /= static_cast<double>(g.arguments);
    }
    if (arguments > 0) mean_sim /= static_cast<double>(arguments);
}

}  // namespace argstruct
