#ifndef ARGSTRUCT_EVALUATION_HPP
#define ARGSTRUCT_EVALUATION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "argstruct/corpus.hpp"
#include "argstruct/decoder.hpp"

namespace argstruct {

// SimScore(pred, gold) = |E(pred) n E(gold)| / |E(gold)|, directed edges,
// labels ignored.
double sim_score(const PredictedStructure& predicted, const Argument& gold);

// Labeled variant: an edge counts only if (child, parent, label) all match.
double labeled_sim_score(const PredictedStructure& predicted, const Argument& gold);

struct RandomBaselineResult {
    double analytic = 0.0;     // 1/n
    double monte_carlo = 0.0;  // mean SimScore of uniform random rooted trees
    long trials = 0;
};

// Uniform rooted labeled trees via Prufer sampling plus a uniform root;
// the gold tree is a fixed star. Trial RNG streams are indexed, so the
// result is independent of thread count.
RandomBaselineResult random_baseline(int n, long trials, uint64_t seed,
                                     bool parallel = true);

struct ClassMetrics {
    std::optional<double> confidence;  // mean calibrated Support-direction score
    std::optional<double> recall;
    std::optional<double> precision;
};

struct ClassifierReport {
    std::vector<std::string> classes;
    std::map<std::string, ClassMetrics> per_class;
    double accuracy = 0.0;
    size_t pairs = 0;
};

struct PairPrediction {
    int predicted = 0;                     // class index
    int gold = 0;                          // class index
    std::optional<double> support_score;   // calibrated Support-direction score
};

// Mean confidence per gold class follows the Table-1 convention: the
// calibrated Support score averaged over pairs of that gold class, so 1 is
// perfect for Support and 0 perfect for Neutral. Empty denominators report
// as absent, not zero.
ClassifierReport classifier_metrics(const std::vector<PairPrediction>& predictions,
                                    const std::vector<std::string>& classes);

struct SimGroup {
    int nodes = 0;
    int arguments = 0;
    double mean_sim = 0.0;
};

struct SimReport {
    std::map<int, SimGroup> by_nodes;
    int arguments = 0;
    double mean_sim = 0.0;  // over all arguments

    void add(int nodes, double sim);
    void finalize();
};

}  // namespace argstruct

#endif
