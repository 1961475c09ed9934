#include <algorithm>
#include <cmath>

#include "argstruct/classifiers.hpp"
#include "argstruct/rng.hpp"

namespace argstruct {

namespace {

void check_activation(const std::string& name) {
    if (name != "relu") throw Error("unsupported MLP activation: '" + name + "'");
}

std::vector<double> softmax(const std::vector<double>& logits) {
    double mx = *std::max_element(logits.begin(), logits.end());
    std::vector<double> out(logits.size());
    double sum = 0.0;
    for (size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - mx);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

// forward pass keeping pre-activation values per layer for backprop
struct ForwardState {
    std::vector<std::vector<double>> activations;  // per layer incl. input
};

std::vector<double> forward(const MlpModel& m, const FeatureVector& x,
                            ForwardState* state) {
    std::vector<double> cur = x;
    if (state) state->activations.push_back(cur);
    size_t layers = m.weights.size();
    for (size_t l = 0; l < layers; ++l) {
        size_t in = m.layer_sizes[l], out = m.layer_sizes[l + 1];
        std::vector<double> next(out);
        for (size_t r = 0; r < out; ++r) {
            double v = m.biases[l][r];
            const double* wrow = &m.weights[l][r * in];
            for (size_t c = 0; c < in; ++c) v += wrow[c] * cur[c];
            next[r] = v;
        }
        if (l + 1 < layers) {
            for (double& v : next) v = v > 0.0 ? v : 0.0;  // relu
        }
        cur = std::move(next);
        if (state) state->activations.push_back(cur);
    }
    return cur;  // logits
}

}  // namespace

std::vector<double> mlp_forward_logits(const MlpModel& model,
                                       const FeatureVector& standardized) {
    return forward(model, standardized, nullptr);
}

std::vector<double> predict_proba(const MlpModel& model, const FeatureVector& x) {
    FeatureVector z = model.standardizer.apply(x);
    return softmax(forward(model, z, nullptr));
}

double mlp_loss(const MlpModel& model, const std::vector<FeatureVector>& rows,
                const std::vector<int>& labels) {
    double total = 0.0;
    for (size_t i = 0; i < rows.size(); ++i) {
        auto probs = softmax(forward(model, rows[i], nullptr));
        double p = probs[static_cast<size_t>(labels[i])];
        total += -std::log(std::max(p, 1e-300));
    }
    return total / static_cast<double>(rows.size());
}

void mlp_gradients(const MlpModel& model, const std::vector<FeatureVector>& rows,
                   const std::vector<int>& labels,
                   std::vector<std::vector<double>>& grad_w,
                   std::vector<std::vector<double>>& grad_b) {
    size_t layers = model.weights.size();
    grad_w.assign(layers, {});
    grad_b.assign(layers, {});
    for (size_t l = 0; l < layers; ++l) {
        grad_w[l].assign(model.weights[l].size(), 0.0);
        grad_b[l].assign(model.biases[l].size(), 0.0);
    }

    double inv_n = 1.0 / static_cast<double>(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        ForwardState state;
        auto logits = forward(model, rows[i], &state);
        auto probs = softmax(logits);

        // delta at the output layer: softmax cross-entropy
        std::vector<double> delta = probs;
        delta[static_cast<size_t>(labels[i])] -= 1.0;

        for (size_t l = layers; l-- > 0;) {
            size_t in = model.layer_sizes[l], out = model.layer_sizes[l + 1];
            const auto& input = state.activations[l];
            for (size_t r = 0; r < out; ++r) {
                grad_b[l][r] += delta[r] * inv_n;
                double* grow = &grad_w[l][r * in];
                for (size_t c = 0; c < in; ++c) grow[c] += delta[r] * input[c] * inv_n;
            }
            if (l == 0) break;
            std::vector<double> prev_delta(in, 0.0);
            for (size_t r = 0; r < out; ++r) {
                const double* wrow = &model.weights[l][r * in];
                for (size_t c = 0; c < in; ++c) prev_delta[c] += wrow[c] * delta[r];
            }
            // relu derivative uses the post-activation values of layer l
            const auto& act = state.activations[l];
            for (size_t c = 0; c < in; ++c) {
                if (act[c] <= 0.0) prev_delta[c] = 0.0;
            }
            delta = std::move(prev_delta);
        }
    }
}

MlpModel train_mlp(const Dataset& data, const MlpConfig& cfg) {
    data.validate();
    check_activation(cfg.activation);
    if (cfg.batch_size == 0) throw Error("MLP batch size must be positive");

    MlpModel model;
    model.activation = cfg.activation;
    model.classes = data.classes;
    model.layout_fingerprint = data.layout_fingerprint;
    model.standardizer.fit(data.rows);

    model.layer_sizes.push_back(data.width());
    for (size_t h : cfg.hidden) model.layer_sizes.push_back(h);
    model.layer_sizes.push_back(data.classes.size());

    Rng rng(cfg.seed);
    size_t layers = model.layer_sizes.size() - 1;
    for (size_t l = 0; l < layers; ++l) {
        size_t in = model.layer_sizes[l], out = model.layer_sizes[l + 1];
        double limit = std::sqrt(6.0 / static_cast<double>(in + out));
        std::vector<double> w(in * out);
        for (double& v : w) v = rng.uniform(-limit, limit);
        model.weights.push_back(std::move(w));
        model.biases.push_back(std::vector<double>(out, 0.0));
    }

    std::vector<FeatureVector> std_rows(data.rows.size());
    for (size_t i = 0; i < data.rows.size(); ++i) {
        std_rows[i] = model.standardizer.apply(data.rows[i]);
    }

    std::vector<size_t> order(data.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::vector<std::vector<double>> grad_w, grad_b;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        for (size_t start = 0; start < order.size(); start += cfg.batch_size) {
            size_t end = std::min(order.size(), start + cfg.batch_size);
            std::vector<FeatureVector> batch;
            std::vector<int> batch_labels;
            batch.reserve(end - start);
            for (size_t i = start; i < end; ++i) {
                batch.push_back(std_rows[order[i]]);
                batch_labels.push_back(data.labels[order[i]]);
            }
            mlp_gradients(model, batch, batch_labels, grad_w, grad_b);
            for (size_t l = 0; l < layers; ++l) {
                for (size_t j = 0; j < model.weights[l].size(); ++j) {
                    model.weights[l][j] -= cfg.learning_rate * grad_w[l][j];
                }
                for (size_t j = 0; j < model.biases[l].size(); ++j) {
                    model.biases[l][j] -= cfg.learning_rate * grad_b[l][j];
                }
            }
        }
    }
    return model;
}

}  // namespace argstruct
