#ifndef ARGSTRUCT_SCORING_HPP
#define ARGSTRUCT_SCORING_HPP

#include <string>
#include <vector>

#include "argstruct/classifiers.hpp"
#include "argstruct/corpus.hpp"
#include "argstruct/features.hpp"

namespace argstruct {

enum class ScoreMode { Binary, Multiclass };

// Dense per-ordered-pair scores for one argument. Entry (i, j) scores the
// hypothetical edge node[i] -> node[j] (i is the Text/child side). The
// diagonal is unused.
struct ScoreMatrix {
    std::string argument_id;
    std::vector<std::string> node_ids;
    ScoreMode mode = ScoreMode::Binary;

    std::vector<double> raw;      // binary: classifier margin / P(Support)
    std::vector<double> support;  // binary: calibrated score in [0, 1]
    // binary argmax boundary on `raw`: 0 for margins, 0.5 for probabilities
    double positive_threshold = 0.0;

    // multiclass: per-pair confidences, normalized to sum to 1
    std::vector<double> conf_support;
    std::vector<double> conf_attack;
    std::vector<double> conf_neutral;

    size_t size() const { return node_ids.size(); }
    size_t idx(size_t text, size_t hyp) const { return text * node_ids.size() + hyp; }
};

// Min-max scaling over one argument's candidate scores; a constant list
// maps to all 0.5. Order-preserving.
std::vector<double> calibrate_scores(const std::vector<double>& raw);

// Scores all ordered pairs of the argument. Binary mode calibrates the
// positive-class scores per argument; multiclass mode stores normalized
// per-label confidences (softmax over one-vs-rest margins for the SVM,
// probabilities for the MLP). Parallel across pairs.
ScoreMatrix score_argument(const AnyModel& model, const Argument& arg,
                           const FeatureLayout& layout,
                           const FeatureArtifacts& artifacts, ScoreMode mode,
                           bool parallel = true);

}  // namespace argstruct

#endif
