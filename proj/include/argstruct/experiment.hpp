#ifndef ARGSTRUCT_EXPERIMENT_HPP
#define ARGSTRUCT_EXPERIMENT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "argstruct/classifiers.hpp"
#include "argstruct/decoder.hpp"
#include "argstruct/evaluation.hpp"

namespace argstruct {

enum class Framework { Type1, Type2, Multiclass, TwoStep };
enum class ModelKind { Svm, Mlp };
enum class DecoderKind { Exhaustive, Arborescence, Chain };

Framework framework_from_string(const std::string& s);
ModelKind model_kind_from_string(const std::string& s);
DecoderKind decoder_kind_from_string(const std::string& s);
const char* to_string(Framework f);
const char* to_string(ModelKind m);
const char* to_string(DecoderKind d);

struct ExperimentConfig {
    std::string corpus_path;
    std::string embeddings_path;
    std::string negation_lexicon_path;  // empty: built-in default list
    std::string antonym_lexicon_path;   // empty: no antonym pairs
    std::string annotator_mode = "offline";
    std::string annotator_endpoint;
    std::string entity_cache_path;

    Framework framework = Framework::Type1;
    Framework detection_framework = Framework::Type2;  // two-step detection stage
    ModelKind model = ModelKind::Svm;
    std::vector<std::string> features = {"discourse", "modal", "lcp",
                                         "entity",    "ngram", "wordvec"};
    DecoderKind decoder = DecoderKind::Exhaustive;
    int tree_cap = 10;
    int chain_cap = 8;
    int max_nodes = 10;  // experiment-level size filter, as in the paper
    int k = 5;
    uint64_t seed = 13;
    double ngram_threshold = 3.0;
    std::string out_dir;

    SvmConfig svm;
    MlpConfig mlp;
    bool parallel = true;
    int threads = 0;  // 0: library default

    void validate() const;
};

// One trained scoring stack: model plus the fitted artifacts that shaped
// its features.
struct TrainedPipeline {
    AnyModel model;
    FeatureLayout layout;
    FeatureArtifacts artifacts;
    std::vector<size_t> class_counts;  // training-set class sizes
};

struct CrossValResult {
    // "classifier" for binary runs; "detection"/"resolver"/"two_step" or
    // "single_step" for the Attack extensions
    std::map<std::string, ClassifierReport> classifiers;
    // "sim" for binary runs; "t_s_1"/"t_s" or "s_s_1"/"s_s"
    std::map<std::string, SimReport> structures;
    int arguments_used = 0;
    int arguments_skipped = 0;
};

struct AblationRow {
    std::string group;
    double mean_sim = 0.0;
    double pct_decrease = 0.0;
};

struct AblationReport {
    bool with_wordvec = true;
    double baseline_sim = 0.0;
    std::vector<AblationRow> rows;
};

// What a model is trained to distinguish. Binary follows cfg.framework
// (type-1/type-2), Detection follows cfg.detection_framework with gold
// edges of either label collapsed to "edge", Resolver sees gold edges
// only, SingleStep sees the 3-class type-1 pair set.
enum class TrainingTask { Binary, Detection, Resolver, SingleStep };

const std::vector<std::string>& task_classes(TrainingTask task);

// Shared artifact loading (embeddings, lexicons, annotator); the n-gram
// vocabulary stays empty until fitted per fold or training run.
FeatureArtifacts load_artifacts(const ExperimentConfig& cfg);

std::vector<FeatureGroup> parse_feature_mask(const std::vector<std::string>& names);

// Fit the n-gram vocabulary (when enabled) on the training arguments'
// gold edges, build the layout, extract pair features and train the
// configured model for the task.
TrainedPipeline train_pipeline(const std::vector<Argument>& training_args,
                               const ExperimentConfig& cfg, TrainingTask task,
                               uint64_t seed,
                               const FeatureArtifacts& base_artifacts);

// Task-specific labeled pairs for one argument (training and evaluation
// use the same generation).
std::vector<LabeledPair> task_pairs(const Argument& arg,
                                    const ExperimentConfig& cfg,
                                    TrainingTask task);
int task_label(const LabeledPair& pair, TrainingTask task);

CrossValResult run_cross_validation(const std::vector<Argument>& corpus,
                                    const ExperimentConfig& cfg);

AblationReport run_ablation(const std::vector<Argument>& corpus,
                            const ExperimentConfig& cfg,
                            const std::vector<std::string>& groups,
                            bool with_wordvec);

// Deterministic JSON / plain-text renderings (Table-1 / Table-2 shapes).
std::string crossval_report_json(const CrossValResult& result,
                                 const ExperimentConfig& cfg);
std::string crossval_report_text(const CrossValResult& result);
std::string ablation_report_json(const AblationReport& report);
std::string ablation_report_text(const AblationReport& report);

std::string predictions_json(const std::vector<PredictedStructure>& preds,
                             const std::map<std::string, double>& sims);

}  // namespace argstruct

#endif
