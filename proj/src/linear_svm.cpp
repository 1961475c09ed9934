#include <algorithm>
#include <cmath>

#include "argstruct/classifiers.hpp"
#include "argstruct/rng.hpp"

namespace argstruct {

std::vector<size_t> Dataset::class_counts() const {
    std::vector<size_t> counts(classes.size(), 0);
    for (int l : labels) counts[static_cast<size_t>(l)]++;
    return counts;
}

void Dataset::validate() const {
    if (rows.size() != labels.size()) {
        throw Error("dataset rows and labels differ in length");
    }
    if (rows.empty()) throw Error("dataset is empty");
    if (classes.size() < 2) throw Error("dataset must declare at least 2 classes");
    size_t w = rows[0].size();
    for (const auto& r : rows) {
        if (r.size() != w) throw Error("dataset rows have inconsistent widths");
        for (double v : r) {
            if (!std::isfinite(v)) throw Error("dataset contains a non-finite feature");
        }
    }
    size_t present = 0;
    for (size_t c : class_counts()) present += c > 0 ? 1 : 0;
    if (present < 2) throw Error("training data contains a single class");
    for (int l : labels) {
        if (l < 0 || static_cast<size_t>(l) >= classes.size()) {
            throw Error("label index out of range");
        }
    }
    if (rows.size() < classes.size()) {
        throw Error("fewer rows than classes");
    }
}

void Standardizer::fit(const std::vector<FeatureVector>& rows) {
    size_t w = rows[0].size();
    mean.assign(w, 0.0);
    scale.assign(w, 1.0);
    double n = static_cast<double>(rows.size());
    for (const auto& r : rows) {
        for (size_t j = 0; j < w; ++j) mean[j] += r[j];
    }
    for (size_t j = 0; j < w; ++j) mean[j] /= n;
    std::vector<double> var(w, 0.0);
    for (const auto& r : rows) {
        for (size_t j = 0; j < w; ++j) {
            double d = r[j] - mean[j];
            var[j] += d * d;
        }
    }
    for (size_t j = 0; j < w; ++j) {
        double sd = std::sqrt(var[j] / n);
        scale[j] = sd > 0.0 ? sd : 1.0;
    }
}

FeatureVector Standardizer::apply(const FeatureVector& x) const {
    if (x.size() != mean.size()) {
        throw Error("feature width " + std::to_string(x.size()) +
                    " does not match standardizer width " + std::to_string(mean.size()));
    }
    FeatureVector out(x.size());
    for (size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - mean[j]) / scale[j];
    return out;
}

namespace {

// One-vs-rest hinge-loss SGD for a single positive class. `y` holds +1/-1,
// `cw` the per-example loss weight.
std::vector<double> train_binary_svm(const std::vector<FeatureVector>& rows,
                                     const std::vector<double>& y,
                                     const std::vector<double>& cw,
                                     const SvmConfig& cfg, double& bias_out,
                                     uint64_t seed) {
    size_t w = rows[0].size();
    std::vector<double> weights(w, 0.0);
    double bias = 0.0;
    Rng rng(seed);
    std::vector<size_t> order(rows.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    long t = 0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        for (size_t i : order) {
            ++t;
            double lr = cfg.learning_rate / std::sqrt(static_cast<double>(t));
            const auto& x = rows[i];
            double margin = bias;
            for (size_t j = 0; j < w; ++j) margin += weights[j] * x[j];
            margin *= y[i];
            // L2 shrink applies every step; the hinge term only when active.
            if (margin < 1.0) {
                double g = lr * cw[i] * y[i];
                for (size_t j = 0; j < w; ++j) {
                    weights[j] = weights[j] * (1.0 - lr * cfg.lambda) + g * x[j];
                }
                bias += g;
            } else {
                double shrink = 1.0 - lr * cfg.lambda;
                for (size_t j = 0; j < w; ++j) weights[j] *= shrink;
            }
        }
    }
    bias_out = bias;
    return weights;
}

}  // namespace

LinearModel train_linear_svm(const Dataset& data, const SvmConfig& cfg) {
    data.validate();

    LinearModel model;
    model.classes = data.classes;
    model.layout_fingerprint = data.layout_fingerprint;
    model.standardizer.fit(data.rows);

    std::vector<FeatureVector> std_rows(data.rows.size());
    for (size_t i = 0; i < data.rows.size(); ++i) {
        std_rows[i] = model.standardizer.apply(data.rows[i]);
    }

    // balanced class weights: N / (K * count(class)) for the example's class
    std::vector<double> class_weight(data.classes.size(), 1.0);
    if (cfg.balanced) {
        auto counts = data.class_counts();
        double n = static_cast<double>(data.size());
        double k = static_cast<double>(data.classes.size());
        for (size_t c = 0; c < counts.size(); ++c) {
            class_weight[c] = counts[c] > 0 ? n / (k * static_cast<double>(counts[c])) : 0.0;
        }
    }
    std::vector<double> cw(data.size());
    for (size_t i = 0; i < data.size(); ++i) {
        cw[i] = class_weight[static_cast<size_t>(data.labels[i])];
    }

    if (data.classes.size() == 2) {
        // single separator; positive margin favors classes[0]
        std::vector<double> y(data.size());
        for (size_t i = 0; i < data.size(); ++i) y[i] = data.labels[i] == 0 ? 1.0 : -1.0;
        double bias = 0.0;
        model.weights.push_back(
            train_binary_svm(std_rows, y, cw, cfg, bias, cfg.seed));
        model.bias.push_back(bias);
    } else {
        for (size_t c = 0; c < data.classes.size(); ++c) {
            std::vector<double> y(data.size());
            for (size_t i = 0; i < data.size(); ++i) {
                y[i] = data.labels[i] == static_cast<int>(c) ? 1.0 : -1.0;
            }
            double bias = 0.0;
            model.weights.push_back(train_binary_svm(std_rows, y, cw, cfg, bias,
                                                     Rng::mix(cfg.seed, c)));
            model.bias.push_back(bias);
        }
    }
    return model;
}

std::vector<double> decision_values(const LinearModel& model, const FeatureVector& x) {
    FeatureVector z = model.standardizer.apply(x);
    std::vector<double> out;
    out.reserve(model.weights.size());
    for (size_t c = 0; c < model.weights.size(); ++c) {
        double v = model.bias[c];
        const auto& w = model.weights[c];
        for (size_t j = 0; j < w.size(); ++j) v += w[j] * z[j];
        out.push_back(v);
    }
    return out;
}

double decision_value(const LinearModel& model, const FeatureVector& x) {
    return decision_values(model, x)[0];
}

int predicted_class(const std::vector<double>& scores) {
    int best = 0;
    for (size_t i = 1; i < scores.size(); ++i) {
        if (scores[i] > scores[static_cast<size_t>(best)]) best = static_cast<int>(i);
    }
    return best;
}

}  // namespace argstruct
