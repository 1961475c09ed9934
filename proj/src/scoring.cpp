#include "argstruct/scoring.hpp"

#include <algorithm>
#include <cmath>

namespace argstruct {

std::vector<double> calibrate_scores(const std::vector<double>& raw) {
    if (raw.empty()) throw Error("calibrate_scores: empty input");
    for (double v : raw) {
        if (!std::isfinite(v)) throw Error("calibrate_scores: non-finite input");
    }
    double lo = *std::min_element(raw.begin(), raw.end());
    double hi = *std::max_element(raw.begin(), raw.end());
    std::vector<double> out(raw.size());
    if (hi == lo) {
        std::fill(out.begin(), out.end(), 0.5);
        return out;
    }
    double span = hi - lo;
    for (size_t i = 0; i < raw.size(); ++i) out[i] = (raw[i] - lo) / span;
    return out;
}

namespace {

std::vector<double> softmax3(double a, double b, double c) {
    double mx = std::max(a, std::max(b, c));
    double ea = std::exp(a - mx), eb = std::exp(b - mx), ec = std::exp(c - mx);
    double sum = ea + eb + ec;
    return {ea / sum, eb / sum, ec / sum};
}

int class_index(const std::vector<std::string>& classes, const char* name) {
    for (size_t i = 0; i < classes.size(); ++i) {
        if (classes[i] == name) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace

ScoreMatrix score_argument(const AnyModel& model, const Argument& arg,
                           const FeatureLayout& layout,
                           const FeatureArtifacts& artifacts, ScoreMode mode,
                           bool parallel) {
    if (arg.nodes.size() < 2) {
        throw Error("argument '" + arg.id + "' has fewer than 2 nodes");
    }
    if (model_fingerprint(model) != layout.fingerprint) {
        throw Error("model fingerprint does not match feature layout (model '" +
                    model_fingerprint(model) + "' vs layout '" + layout.fingerprint + "')");
    }

    size_t n = arg.nodes.size();
    ScoreMatrix sm;
    sm.argument_id = arg.id;
    sm.mode = mode;
    sm.positive_threshold = std::holds_alternative<MlpModel>(model) ? 0.5 : 0.0;
    for (const auto& node : arg.nodes) sm.node_ids.push_back(node.id);

    const auto& classes = model_classes(model);
    int si = -1, ai = -1, ni = -1;
    if (mode == ScoreMode::Multiclass) {
        si = class_index(classes, "support");
        ai = class_index(classes, "attack");
        ni = class_index(classes, "neutral");
        if (si < 0 || ai < 0 || ni < 0) {
            throw Error("multiclass scoring requires classes support/attack/neutral");
        }
        sm.conf_support.assign(n * n, 0.0);
        sm.conf_attack.assign(n * n, 0.0);
        sm.conf_neutral.assign(n * n, 0.0);
    } else {
        sm.raw.assign(n * n, 0.0);
    }

    // flat list of ordered pairs for the parallel loop
    std::vector<std::pair<size_t, size_t>> pairs;
    pairs.reserve(n * (n - 1));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            if (i != j) pairs.push_back({i, j});
        }
    }

    const bool is_mlp = std::holds_alternative<MlpModel>(model);
    std::exception_ptr failure;
#ifdef _OPENMP
    #pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
    for (long p = 0; p < static_cast<long>(pairs.size()); ++p) {
        try {
            auto [i, j] = pairs[static_cast<size_t>(p)];
            LabeledPair lp{arg.id, arg.nodes[i].id, arg.nodes[j].id, Relation::Neutral};
            FeatureVector x = extract(lp, arg, layout, artifacts);
            std::vector<double> scores = model_raw_scores(model, x);
            size_t at = sm.idx(i, j);
            if (mode == ScoreMode::Binary) {
                sm.raw[at] = scores[0];  // margin or probability of classes[0]
            } else {
                std::vector<double> conf;
                if (is_mlp) {
                    conf = {scores[static_cast<size_t>(si)],
                            scores[static_cast<size_t>(ai)],
                            scores[static_cast<size_t>(ni)]};
                    double sum = conf[0] + conf[1] + conf[2];
                    for (double& v : conf) v /= sum;
                } else {
                    conf = softmax3(scores[static_cast<size_t>(si)],
                                    scores[static_cast<size_t>(ai)],
                                    scores[static_cast<size_t>(ni)]);
                }
                sm.conf_support[at] = conf[0];
                sm.conf_attack[at] = conf[1];
                sm.conf_neutral[at] = conf[2];
            }
        } catch (...) {
#ifdef _OPENMP
            #pragma omp critical
#endif
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    if (mode == ScoreMode::Binary) {
        // calibrate over this argument's candidate pairs only
        std::vector<double> flat;
        flat.reserve(pairs.size());
        for (const auto& [i, j] : pairs) flat.push_back(sm.raw[sm.idx(i, j)]);
        std::vector<double> cal = calibrate_scores(flat);
        sm.support.assign(n * n, 0.0);
        for (size_t p = 0; p < pairs.size(); ++p) {
            sm.support[sm.idx(pairs[p].first, pairs[p].second)] = cal[p];
        }
    }
    return sm;
}

}  // namespace argstruct
