#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "argstruct/classifiers.hpp"
#include "argstruct/rng.hpp"
#include "argstruct/scoring.hpp"

using namespace argstruct;

namespace {

// Two uniform boxes separated along x by a gap of 1: separable by
// construction.
Dataset separable_blobs(size_t per_class, uint64_t seed) {
    Rng rng(seed);
    Dataset d;
    d.classes = {"support", "neutral"};
    d.layout_fingerprint = "test";
    for (size_t i = 0; i < per_class; ++i) {
        d.rows.push_back({rng.uniform(0.5, 1.5), rng.uniform(-1, 1)});
        d.labels.push_back(0);
        d.rows.push_back({rng.uniform(-1.5, -0.5), rng.uniform(-1, 1)});
        d.labels.push_back(1);
    }
    return d;
}

Dataset imbalanced_blobs(size_t majority, size_t minority, uint64_t seed) {
    Rng rng(seed);
    Dataset d;
    d.classes = {"support", "neutral"};
    d.layout_fingerprint = "test";
    for (size_t i = 0; i < minority; ++i) {
        d.rows.push_back({rng.uniform(0.5, 1.5), rng.uniform(-1, 1)});
        d.labels.push_back(0);
    }
    for (size_t i = 0; i < majority; ++i) {
        d.rows.push_back({rng.uniform(-1.5, -0.5), rng.uniform(-1, 1)});
        d.labels.push_back(1);
    }
    return d;
}

double training_accuracy(const LinearModel& m, const Dataset& d) {
    size_t hits = 0;
    for (size_t i = 0; i < d.size(); ++i) {
        int pred = decision_value(m, d.rows[i]) > 0 ? 0 : 1;
        hits += pred == d.labels[i];
    }
    return static_cast<double>(hits) / static_cast<double>(d.size());
}

LinearModel identity_linear(std::vector<double> w, double b) {
    LinearModel m;
    m.weights = {std::move(w)};
    m.bias = {b};
    m.classes = {"support", "neutral"};
    m.standardizer.mean.assign(m.weights[0].size(), 0.0);
    m.standardizer.scale.assign(m.weights[0].size(), 1.0);
    return m;
}

MlpModel zero_mlp(size_t inputs, size_t classes) {
    MlpModel m;
    m.layer_sizes = {inputs, 4, classes};
    m.weights = {std::vector<double>(inputs * 4, 0.0), std::vector<double>(4 * classes, 0.0)};
    m.biases = {std::vector<double>(4, 0.0), std::vector<double>(classes, 0.0)};
    m.classes.resize(classes);
    m.standardizer.mean.assign(inputs, 0.0);
    m.standardizer.scale.assign(inputs, 1.0);
    return m;
}

}  // namespace

TEST_CASE("linear SVM separates constructed blobs") {
    Dataset d = separable_blobs(100, 21);  // 200 points
    SvmConfig cfg;
    LinearModel m = train_linear_svm(d, cfg);
    CHECK(training_accuracy(m, d) >= 0.95);

    SUBCASE("deterministic for a fixed seed") {
        LinearModel m2 = train_linear_svm(d, cfg);
        CHECK(m.weights == m2.weights);
        CHECK(m.bias == m2.bias);
        cfg.seed = 99;
        LinearModel m3 = train_linear_svm(d, cfg);
        CHECK(m.weights != m3.weights);
    }
}

TEST_CASE("balanced weighting recovers the minority class") {
    Dataset d = imbalanced_blobs(180, 20, 22);
    SvmConfig cfg;
    cfg.balanced = true;
    LinearModel m = train_linear_svm(d, cfg);
    size_t minority_hits = 0, minority_total = 0;
    for (size_t i = 0; i < d.size(); ++i) {
        if (d.labels[i] != 0) continue;
        ++minority_total;
        minority_hits += decision_value(m, d.rows[i]) > 0;
    }
    double recall = static_cast<double>(minority_hits) / static_cast<double>(minority_total);
    CHECK(recall >= 0.8);
}

TEST_CASE("balanced weighting approximates minority duplication") {
    Dataset d = imbalanced_blobs(180, 20, 33);
    SvmConfig balanced_cfg;
    balanced_cfg.balanced = true;
    LinearModel balanced = train_linear_svm(d, balanced_cfg);

    Dataset dup = d;
    for (size_t i = 0; i < d.size(); ++i) {
        if (d.labels[i] == 0) {
            for (int copy = 0; copy < 8; ++copy) {  // 20 * 9 = 180 total
                dup.rows.push_back(d.rows[i]);
                dup.labels.push_back(0);
            }
        }
    }
    SvmConfig plain_cfg;
    plain_cfg.balanced = false;
    LinearModel duplicated = train_linear_svm(dup, plain_cfg);

    // direction agreement on a held-out grid
    size_t agree = 0, total = 0;
    for (double x = -2.0; x <= 2.0; x += 0.25) {
        for (double y = -2.0; y <= 2.0; y += 0.25) {
            ++total;
            bool a = decision_value(balanced, {x, y}) > 0;
            bool b = decision_value(duplicated, {x, y}) > 0;
            agree += a == b;
        }
    }
    CHECK(static_cast<double>(agree) / static_cast<double>(total) >= 0.9);
}

TEST_CASE("svm rejects degenerate input") {
    Dataset d;
    d.classes = {"support", "neutral"};
    d.rows = {{1, 0}, {2, 0}};
    d.labels = {0, 0};
    CHECK_THROWS_AS(train_linear_svm(d, SvmConfig{}), Error);
    d.labels = {0, 1};
    d.rows[1][0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(train_linear_svm(d, SvmConfig{}), Error);
}

TEST_CASE("decision values are affine in the standardized input") {
    LinearModel m = identity_linear({1, 0}, 0);
    CHECK(decision_value(m, {2, 5}) == 2);
    CHECK(decision_value(m, {0, 7}) == 0);  // on the boundary
    LinearModel neg = identity_linear({-1, 0}, 0);
    CHECK(decision_value(neg, {2, 5}) == -2);

    SUBCASE("layout width mismatch") {
        CHECK_THROWS_AS(decision_value(m, {1, 2, 3}), Error);
    }
}

TEST_CASE("mlp probabilities are a softmax") {
    MlpModel two = zero_mlp(3, 2);
    auto p = predict_proba(two, {1, 2, 3});
    REQUIRE(p.size() == 2);
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-12));

    MlpModel three = zero_mlp(3, 3);
    auto q = predict_proba(three, {0.5, -1, 2});
    REQUIRE(q.size() == 3);
    for (double v : q) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-12));

    SUBCASE("sums to one on random weights") {
        Rng rng(5);
        MlpModel m = zero_mlp(4, 3);
        for (auto& layer : m.weights) {
            for (double& w : layer) w = rng.uniform(-1, 1);
        }
        for (int trial = 0; trial < 20; ++trial) {
            FeatureVector x = {rng.uniform(-2, 2), rng.uniform(-2, 2),
                               rng.uniform(-2, 2), rng.uniform(-2, 2)};
            auto probs = predict_proba(m, x);
            double sum = 0;
            for (double v : probs) {
                CHECK(v > 0);
                CHECK(v < 1);
                sum += v;
            }
            CHECK(std::abs(sum - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("mlp analytic gradients match central finite differences") {
    Rng rng(77);
    MlpModel m;
    m.layer_sizes = {6, 5, 4, 3};
    m.classes = {"a", "b", "c"};
    for (size_t l = 0; l + 1 < m.layer_sizes.size(); ++l) {
        size_t in = m.layer_sizes[l], out = m.layer_sizes[l + 1];
        std::vector<double> w(in * out);
        for (double& v : w) v = rng.uniform(-0.8, 0.8);
        m.weights.push_back(std::move(w));
        std::vector<double> b(out);
        for (double& v : b) v = rng.uniform(-0.2, 0.2);
        m.biases.push_back(std::move(b));
    }
    std::vector<FeatureVector> rows;
    std::vector<int> labels;
    for (int i = 0; i < 12; ++i) {
        FeatureVector x(6);
        for (double& v : x) v = rng.uniform(-1.5, 1.5);
        rows.push_back(std::move(x));
        labels.push_back(static_cast<int>(rng.bounded(3)));
    }

    std::vector<std::vector<double>> gw, gb;
    mlp_gradients(m, rows, labels, gw, gb);

    const double h = 1e-6;
    int checked = 0;
    for (int probe = 0; probe < 25; ++probe) {
        size_t l = rng.bounded(m.weights.size());
        size_t j = rng.bounded(m.weights[l].size());
        double saved = m.weights[l][j];
        m.weights[l][j] = saved + h;
        double up = mlp_loss(m, rows, labels);
        m.weights[l][j] = saved - h;
        double down = mlp_loss(m, rows, labels);
        m.weights[l][j] = saved;
        double numeric = (up - down) / (2 * h);
        double analytic = gw[l][j];
        if (std::abs(numeric) < 1e-8 && std::abs(analytic) < 1e-8) continue;
        double rel = std::abs(numeric - analytic) /
                     std::max(std::abs(numeric), std::abs(analytic));
        CHECK(rel < 1e-4);
        ++checked;
    }
    CHECK(checked >= 5);
}

TEST_CASE("mlp learns an xor pattern") {
    Rng rng(31);
    Dataset d;
    d.classes = {"a", "b"};
    d.layout_fingerprint = "test";
    for (int i = 0; i < 100; ++i) {
        for (int cx = 0; cx < 2; ++cx) {
            for (int cy = 0; cy < 2; ++cy) {
                d.rows.push_back({cx + rng.uniform(-0.2, 0.2), cy + rng.uniform(-0.2, 0.2)});
                d.labels.push_back(cx == cy ? 0 : 1);
            }
        }
    }
    MlpConfig cfg;
    cfg.hidden = {16, 16};
    cfg.epochs = 120;
    cfg.learning_rate = 0.05;
    cfg.seed = 7;
    MlpModel m = train_mlp(d, cfg);
    size_t hits = 0;
    for (size_t i = 0; i < d.size(); ++i) {
        auto p = predict_proba(m, d.rows[i]);
        hits += predicted_class(p) == d.labels[i];
    }
    CHECK(static_cast<double>(hits) / static_cast<double>(d.size()) >= 0.95);

    SUBCASE("deterministic per seed") {
        MlpModel m2 = train_mlp(d, cfg);
        CHECK(m.weights == m2.weights);
        CHECK(m.biases == m2.biases);
    }
}

TEST_CASE("calibration maps to [0,1] with the degenerate rule") {
    CHECK(calibrate_scores({-2, 0, 2}) == std::vector<double>{0, 0.5, 1});
    CHECK(calibrate_scores({7, 7, 7}) == std::vector<double>{0.5, 0.5, 0.5});
    CHECK(calibrate_scores({1, 3}) == std::vector<double>{0, 1});
    CHECK_THROWS_AS(calibrate_scores({}), Error);
    CHECK_THROWS_AS(calibrate_scores({1.0, std::numeric_limits<double>::infinity()}), Error);

    SUBCASE("preserves ranking") {
        Rng rng(12);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> raw;
            size_t n = 2 + rng.bounded(10);
            for (size_t i = 0; i < n; ++i) raw.push_back(rng.uniform(-5, 5));
            auto cal = calibrate_scores(raw);
            size_t argmax_raw = 0, argmax_cal = 0;
            for (size_t i = 1; i < n; ++i) {
                if (raw[i] > raw[argmax_raw]) argmax_raw = i;
                if (cal[i] > cal[argmax_cal]) argmax_cal = i;
            }
            CHECK(argmax_raw == argmax_cal);
            for (size_t i = 0; i + 1 < n; ++i) {
                CHECK((raw[i] < raw[i + 1]) == (cal[i] < cal[i + 1]));
            }
        }
    }
}

TEST_CASE("standardization round-trip: stored stats equal fresh stats") {
    Dataset d = separable_blobs(50, 41);
    LinearModel m = train_linear_svm(d, SvmConfig{});
    Standardizer fresh;
    fresh.fit(d.rows);
    CHECK(m.standardizer.mean == fresh.mean);
    CHECK(m.standardizer.scale == fresh.scale);
    for (const auto& row : d.rows) {
        CHECK(m.standardizer.apply(row) == fresh.apply(row));
    }
}

TEST_CASE("model files round-trip bit-identically") {
    std::string path = "/tmp/argstruct_model_test.bin";

    SUBCASE("linear") {
        Dataset d = separable_blobs(40, 51);
        LinearModel m = train_linear_svm(d, SvmConfig{});
        save_model(path, m);
        AnyModel loaded = load_model(path);
        const auto& lm = std::get<LinearModel>(loaded);
        for (const auto& row : d.rows) {
            CHECK(decision_value(lm, row) == decision_value(m, row));
        }
        CHECK(lm.classes == m.classes);
    }
    SUBCASE("mlp") {
        Dataset d = separable_blobs(30, 52);
        MlpConfig cfg;
        cfg.hidden = {8};
        cfg.epochs = 5;
        MlpModel m = train_mlp(d, cfg);
        save_model(path, m);
        AnyModel loaded = load_model(path);
        const auto& mm = std::get<MlpModel>(loaded);
        for (const auto& row : d.rows) {
            CHECK(predict_proba(mm, row) == predict_proba(m, row));
        }
    }
    SUBCASE("truncated file is a corrupt-file error") {
        Dataset d = separable_blobs(10, 53);
        LinearModel m = train_linear_svm(d, SvmConfig{});
        save_model(path, m);
        FILE* f = fopen(path.c_str(), "rb");
        REQUIRE(f);
        fseek(f, 0, SEEK_END);
        long size = ftell(f);
        fclose(f);
        std::string trunc = "/tmp/argstruct_model_trunc.bin";
        std::string data(static_cast<size_t>(size), '\0');
        f = fopen(path.c_str(), "rb");
        REQUIRE(fread(data.data(), 1, static_cast<size_t>(size), f) ==
                static_cast<size_t>(size));
        fclose(f);
        f = fopen(trunc.c_str(), "wb");
        fwrite(data.data(), 1, static_cast<size_t>(size / 2), f);
        fclose(f);
        CHECK_THROWS_AS(load_model(trunc), Error);
        f = fopen(trunc.c_str(), "wb");
        fwrite("XXXX", 1, 4, f);
        fclose(f);
        CHECK_THROWS_AS(load_model(trunc), Error);
    }
}
