#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "argstruct/evaluation.hpp"
#include "argstruct/rng.hpp"
#include "helpers.hpp"

using namespace argstruct;

namespace {

Argument gold_three() {
    Argument g;
    g.id = "g";
    g.nodes = {{"a", "x", {}}, {"b", "y", {}}, {"c", "z", {}}};
    g.edges = {{"b", "a", Relation::Support}, {"c", "a", Relation::Support}};
    return g;
}

PredictedStructure predicted(const std::vector<PredictedEdge>& edges,
                             const std::string& id = "g") {
    PredictedStructure ps;
    ps.argument_id = id;
    ps.edges = edges;
    return ps;
}

}  // namespace

TEST_CASE("sim_score counts directed edge overlap over gold edges") {
    Argument g = gold_three();
    CHECK(sim_score(predicted({{"b", "a", {}}, {"c", "a", {}}}), g) == 1.0);
    CHECK(sim_score(predicted({{"b", "a", {}}, {"c", "b", {}}}), g) == 0.5);

    SUBCASE("direction matters") {
        Argument two;
        two.id = "g";
        two.nodes = {{"a", "x", {}}, {"b", "y", {}}};
        two.edges = {{"b", "a", Relation::Support}};
        CHECK(sim_score(predicted({{"a", "b", {}}}), two) == 0.0);
    }
    SUBCASE("node mismatch and empty gold are errors") {
        CHECK_THROWS_AS(sim_score(predicted({{"zz", "a", {}}}), g), Error);
        Argument empty;
        empty.id = "g";
        empty.nodes = {{"a", "x", {}}};
        CHECK_THROWS_AS(sim_score(predicted({}), empty), Error);
    }
    SUBCASE("invariant under edge-list permutation, identity scores 1") {
        Rng rng(8);
        for (int t = 0; t < 20; ++t) {
            Argument arg = testutil::random_tree_argument(
                2 + static_cast<int>(rng.bounded(7)), rng);
            std::vector<PredictedEdge> edges;
            for (const auto& e : arg.edges) edges.push_back({e.from, e.to, e.label});
            rng.shuffle(edges);
            PredictedStructure ps = predicted(edges, arg.id);
            CHECK(sim_score(ps, arg) == 1.0);
        }
    }
}

TEST_CASE("labeled sim score needs the label to match too") {
    Argument g = gold_three();
    g.edges[1].label = Relation::Attack;

    auto all_right = predicted({{"b", "a", Relation::Support}, {"c", "a", Relation::Attack}});
    CHECK(labeled_sim_score(all_right, g) == 1.0);
    CHECK(sim_score(all_right, g) == 1.0);

    auto one_flipped = predicted({{"b", "a", Relation::Support}, {"c", "a", Relation::Support}});
    CHECK(labeled_sim_score(one_flipped, g) == 0.5);
    CHECK(sim_score(one_flipped, g) == 1.0);

    SUBCASE("missing labels are an error") {
        CHECK_THROWS_AS(labeled_sim_score(predicted({{"b", "a", {}}, {"c", "a", {}}}), g),
                        Error);
    }
    SUBCASE("labeled <= unlabeled on random structures") {
        Rng rng(21);
        for (int t = 0; t < 30; ++t) {
            Argument arg = testutil::random_tree_argument(
                3 + static_cast<int>(rng.bounded(5)), rng);
            for (auto& e : arg.edges) {
                if (rng.uniform() < 0.4) e.label = Relation::Attack;
            }
            // predicted: same tree, random labels, one edge redirected
            std::vector<PredictedEdge> edges;
            for (const auto& e : arg.edges) {
                Relation lab = rng.uniform() < 0.5 ? Relation::Support : Relation::Attack;
                edges.push_back({e.from, e.to, lab});
            }
            auto ps = predicted(edges, arg.id);
            double labeled = labeled_sim_score(ps, arg);
            double unlabeled = sim_score(ps, arg);
            CHECK(labeled <= unlabeled);
            CHECK(unlabeled <= 1.0);
            CHECK(labeled >= 0.0);
        }
    }
}

TEST_CASE("random baseline converges to 1/n") {
    CHECK(random_baseline(4, 10, 1).analytic == 0.25);
    CHECK(random_baseline(2, 10, 1).analytic == 0.5);

    for (int n : {2, 3, 4, 5}) {
        auto r = random_baseline(n, 100000, 99);
        CHECK(std::abs(r.monte_carlo - r.analytic) < 0.01);
    }

    SUBCASE("deterministic and thread-count independent") {
        auto a = random_baseline(4, 20000, 7, true);
        auto b = random_baseline(4, 20000, 7, false);
        CHECK(a.monte_carlo == b.monte_carlo);
        auto c = random_baseline(4, 20000, 8, true);
        CHECK(a.monte_carlo != c.monte_carlo);
    }
    SUBCASE("argument checks") {
        CHECK_THROWS_AS(random_baseline(1, 10, 1), Error);
        CHECK_THROWS_AS(random_baseline(3, 0, 1), Error);
    }
}

TEST_CASE("classifier metrics follow the Table-1 conventions") {
    std::vector<std::string> classes = {"support", "neutral"};

    SUBCASE("perfect predictions with ideal confidences") {
        std::vector<PairPrediction> preds;
        for (int i = 0; i < 10; ++i) {
            preds.push_back({0, 0, 1.0});  // support predicted support, conf 1
            preds.push_back({1, 1, 0.0});  // neutral predicted neutral, conf 0
        }
        auto rep = classifier_metrics(preds, classes);
        CHECK(rep.accuracy == 1.0);
        CHECK(*rep.per_class.at("support").confidence == 1.0);
        CHECK(*rep.per_class.at("neutral").confidence == 0.0);
        CHECK(*rep.per_class.at("support").recall == 1.0);
        CHECK(*rep.per_class.at("neutral").recall == 1.0);
        CHECK(*rep.per_class.at("support").precision == 1.0);
        CHECK(*rep.per_class.at("neutral").precision == 1.0);
    }
    SUBCASE("constant support prediction on balanced data") {
        std::vector<PairPrediction> preds;
        for (int i = 0; i < 8; ++i) preds.push_back({0, i % 2, 0.7});
        auto rep = classifier_metrics(preds, classes);
        CHECK(rep.accuracy == 0.5);
        CHECK(*rep.per_class.at("support").recall == 1.0);
        CHECK(*rep.per_class.at("neutral").recall == 0.0);
        CHECK(*rep.per_class.at("support").precision == 0.5);
        CHECK_FALSE(rep.per_class.at("neutral").precision.has_value());
    }
    SUBCASE("empty gold class reports absent recall, not zero") {
        std::vector<PairPrediction> preds = {{0, 0, 0.9}, {1, 0, 0.8}};
        auto rep = classifier_metrics(preds, classes);
        CHECK_FALSE(rep.per_class.at("neutral").recall.has_value());
        CHECK(rep.per_class.at("neutral").precision.has_value());
    }
    SUBCASE("accuracy equals the mean correctness indicator") {
        Rng rng(3);
        std::vector<PairPrediction> preds;
        double correct = 0;
        for (int i = 0; i < 200; ++i) {
            PairPrediction p;
            p.gold = static_cast<int>(rng.bounded(2));
            p.predicted = static_cast<int>(rng.bounded(2));
            correct += p.gold == p.predicted;
            preds.push_back(p);
        }
        auto rep = classifier_metrics(preds, classes);
        CHECK(rep.accuracy == doctest::Approx(correct / 200).epsilon(1e-12));
    }
    SUBCASE("empty input is an error") {
        CHECK_THROWS_AS(classifier_metrics({}, classes), Error);
    }
}

TEST_CASE("sim report groups by node count") {
    SimReport rep;
    rep.add(3, 1.0);
    rep.add(3, 0.5);
    rep.add(5, 0.25);
    rep.finalize();
    CHECK(rep.arguments == 3);
    CHECK(rep.by_nodes.at(3).arguments == 2);
    CHECK(rep.by_nodes.at(3).mean_sim == doctest::Approx(0.75));
    CHECK(rep.by_nodes.at(5).mean_sim == doctest::Approx(0.25));
    CHECK(rep.mean_sim == doctest::Approx((1.0 + 0.5 + 0.25) / 3));
}
