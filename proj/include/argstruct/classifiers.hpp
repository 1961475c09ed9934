#ifndef ARGSTRUCT_CLASSIFIERS_HPP
#define ARGSTRUCT_CLASSIFIERS_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "argstruct/features.hpp"

namespace argstruct {

// Row-major training set. All rows share one feature layout; labels index
// into `classes`.
struct Dataset {
    std::vector<FeatureVector> rows;
    std::vector<int> labels;
    std::vector<std::string> classes;
    std::string layout_fingerprint;

    size_t size() const { return rows.size(); }
    size_t width() const { return rows.empty() ? 0 : rows[0].size(); }
    std::vector<size_t> class_counts() const;
    void validate() const;  // throws on shape/label/finiteness problems
};

// z-score parameters learned on the training set. scale entries are 1
// where the feature is constant.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> scale;

    void fit(const std::vector<FeatureVector>& rows);
    FeatureVector apply(const FeatureVector& x) const;
};

struct SvmConfig {
    int epochs = 50;
    double learning_rate = 0.01;  // decays as lr / sqrt(t)
    double lambda = 1e-4;         // L2 regularization
    uint64_t seed = 13;
    bool balanced = true;         // example loss weighted by N / (K * count(class))
};

// Linear model trained with hinge loss. Binary models hold one weight
// vector whose positive margin favors classes[0]; multi-class models hold
// one one-vs-rest weight vector per class.
struct LinearModel {
    std::vector<std::vector<double>> weights;  // per class (1 row if binary)
    std::vector<double> bias;
    std::vector<std::string> classes;
    std::string layout_fingerprint;
    Standardizer standardizer;

    bool binary() const { return classes.size() == 2; }
};

struct MlpConfig {
    std::vector<size_t> hidden = {200, 200, 200};
    std::string activation = "relu";
    int epochs = 200;
    double learning_rate = 0.01;
    size_t batch_size = 32;
    uint64_t seed = 13;
};

struct MlpModel {
    // weights[l] has shape (layer_sizes[l+1] x layer_sizes[l]), row-major.
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
    std::vector<size_t> layer_sizes;  // input, hidden..., classes
    std::string activation = "relu";
    std::vector<std::string> classes;
    std::string layout_fingerprint;
    Standardizer standardizer;
};

LinearModel train_linear_svm(const Dataset& data, const SvmConfig& cfg);
MlpModel train_mlp(const Dataset& data, const MlpConfig& cfg);

// Per-class decision values w . standardize(x) + b. The binary overload
// returns the scalar margin for classes[0].
std::vector<double> decision_values(const LinearModel& model, const FeatureVector& x);
double decision_value(const LinearModel& model, const FeatureVector& x);

// Softmax class probabilities.
std::vector<double> predict_proba(const MlpModel& model, const FeatureVector& x);

// Raw per-class logits (pre-softmax); exposed for the gradient check.
std::vector<double> mlp_forward_logits(const MlpModel& model,
                                       const FeatureVector& standardized);

// Mean cross-entropy over a batch of already-standardized rows, and the
// corresponding analytic gradients (same shapes as weights/biases). Used
// by training and by the finite-difference oracle test.
double mlp_loss(const MlpModel& model, const std::vector<FeatureVector>& rows,
                const std::vector<int>& labels);
void mlp_gradients(const MlpModel& model, const std::vector<FeatureVector>& rows,
                   const std::vector<int>& labels,
                   std::vector<std::vector<double>>& grad_w,
                   std::vector<std::vector<double>>& grad_b);

// Model container with a kind tag; see model_io.cpp for the file format.
using AnyModel = std::variant<LinearModel, MlpModel>;

const std::vector<std::string>& model_classes(const AnyModel& m);
const std::string& model_fingerprint(const AnyModel& m);

// Per-class raw confidence scores: one-vs-rest margins for linear models,
// softmax probabilities for MLPs.
std::vector<double> model_raw_scores(const AnyModel& m, const FeatureVector& x);

void save_model(const std::string& path, const AnyModel& model);
AnyModel load_model(const std::string& path);

int predicted_class(const std::vector<double>& scores);

}  // namespace argstruct

#endif
