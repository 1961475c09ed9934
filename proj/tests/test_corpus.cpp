#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "argstruct/corpus.hpp"
#include "helpers.hpp"

using namespace argstruct;

namespace {

// The Fig.-1 shape: 271 and 272 are children of 270.
const char* kFig1Corpus = R"({
  "arguments": [
    {
      "id": "arg9",
      "kind": "tree",
      "nodes": [
        {"id": "270", "text": "Steve Bracks is the best person to lead Victoria."},
        {"id": "271", "text": "Steve Bracks has a clear grasp of policy."},
        {"id": "272", "text": "Steve Bracks is a natural leader."}
      ],
      "edges": [
        {"from": "271", "to": "270", "label": "support"},
        {"from": "272", "to": "270", "label": "support"}
      ]
    }
  ]
})";

std::multiset<std::pair<std::string, std::string>> pair_set(
    const std::vector<LabeledPair>& pairs, Relation label) {
    std::multiset<std::pair<std::string, std::string>> out;
    for (const auto& p : pairs) {
        if (p.label == label) out.insert({p.text_node, p.hypothesis_node});
    }
    return out;
}

Argument three_node_tree() {
    Argument arg;
    arg.id = "t3";
    arg.nodes = {{"a", "alpha", {"alpha"}},
                 {"b", "beta", {"beta"}},
                 {"c", "gamma", {"gamma"}}};
    arg.edges = {{"b", "a", Relation::Support}, {"c", "a", Relation::Support}};
    return arg;
}

}  // namespace

TEST_CASE("parse_corpus reads the Fig.-1 shaped document") {
    auto args = parse_corpus_text(kFig1Corpus);
    REQUIRE(args.size() == 1);
    CHECK(args[0].id == "arg9");
    CHECK(args[0].nodes.size() == 3);
    CHECK(args[0].edges.size() == 2);
    CHECK(args[0].edges[0].from == "271");
    CHECK(args[0].edges[0].to == "270");
    CHECK(args[0].nodes[0].tokens[0] == "steve");
}

TEST_CASE("parse_corpus accepts an empty argument list") {
    CHECK(parse_corpus_text(R"({"arguments": []})").empty());
}

TEST_CASE("parse_corpus rejects bad documents") {
    CHECK_THROWS_AS(parse_corpus_text("not json"), Error);
    CHECK_THROWS_AS(parse_corpus_text(R"({"argumentz": []})"), Error);
    // unknown field
    CHECK_THROWS_AS(parse_corpus_text(R"({"arguments": [{"id":"x","kind":"tree",
        "nodes":[{"id":"a","text":"t","extra":1}],"edges":[]}]})"), Error);
    // edge to unknown node id
    CHECK_THROWS_AS(parse_corpus_text(R"({"arguments": [{"id":"x","kind":"tree",
        "nodes":[{"id":"a","text":"t"},{"id":"b","text":"u"}],
        "edges":[{"from":"a","to":"zz","label":"support"}]}]})"), Error);
    // neutral is not a storable edge label
    CHECK_THROWS_AS(parse_corpus_text(R"({"arguments": [{"id":"x","kind":"tree",
        "nodes":[{"id":"a","text":"t"},{"id":"b","text":"u"}],
        "edges":[{"from":"a","to":"b","label":"neutral"}]}]})"), Error);
}

TEST_CASE("validate_argument accepts trees and reports violations") {
    auto args = parse_corpus_text(kFig1Corpus);
    CHECK(validate_argument(args[0]).ok);

    SUBCASE("two-cycle") {
        Argument arg;
        arg.id = "cyc";
        arg.nodes = {{"a", "x", {}}, {"b", "y", {}}};
        arg.edges = {{"a", "b", Relation::Support}, {"b", "a", Relation::Support}};
        auto rep = validate_argument(arg);
        CHECK_FALSE(rep.ok);
        CHECK(rep.violation.find("cycle") != std::string::npos);
    }
    SUBCASE("chain kind with branching node") {
        Argument arg = three_node_tree();
        arg.kind = StructureKind::Chain;
        auto rep = validate_argument(arg);
        CHECK_FALSE(rep.ok);
        CHECK(rep.violation.find("chain") != std::string::npos);
    }
    SUBCASE("self loop") {
        Argument arg;
        arg.id = "sl";
        arg.nodes = {{"a", "x", {}}, {"b", "y", {}}};
        arg.edges = {{"a", "a", Relation::Support}, {"b", "a", Relation::Support}};
        CHECK_FALSE(validate_argument(arg).ok);
    }
    SUBCASE("duplicate edge") {
        Argument arg = three_node_tree();
        arg.edges.push_back(arg.edges[0]);
        CHECK_FALSE(validate_argument(arg).ok);
    }
    SUBCASE("empty text") {
        Argument arg = three_node_tree();
        arg.nodes[1].text = "   ";
        CHECK_FALSE(validate_argument(arg).ok);
    }
    SUBCASE("oversize is flagged but still ok") {
        Rng rng(7);
        Argument arg = testutil::random_tree_argument(12, rng);
        auto rep = validate_argument(arg, 10);
        CHECK(rep.ok);
        CHECK(rep.oversize);
        CHECK_FALSE(validate_argument(arg, 12).oversize);
    }
}

TEST_CASE("generate_pairs_type1 enumerates all ordered pairs") {
    Argument arg = three_node_tree();
    auto pairs = generate_pairs_type1(arg);
    CHECK(pairs.size() == 6);  // n(n-1)
    auto sup = pair_set(pairs, Relation::Support);
    auto neu = pair_set(pairs, Relation::Neutral);
    CHECK(sup == decltype(sup){{"b", "a"}, {"c", "a"}});
    CHECK(neu == decltype(neu){{"a", "b"}, {"a", "c"}, {"b", "c"}, {"c", "b"}});

    SUBCASE("two nodes") {
        Argument two;
        two.id = "t2";
        two.nodes = {{"a", "x", {}}, {"b", "y", {}}};
        two.edges = {{"b", "a", Relation::Support}};
        auto p = generate_pairs_type1(two);
        REQUIRE(p.size() == 2);
        CHECK(pair_set(p, Relation::Support) == decltype(sup){{"b", "a"}});
        CHECK(pair_set(p, Relation::Neutral) == decltype(neu){{"a", "b"}});
    }
    SUBCASE("five node tree: 4 support, 16 neutral") {
        Rng rng(3);
        Argument t5 = testutil::random_tree_argument(5, rng);
        auto p = generate_pairs_type1(t5);
        CHECK(p.size() == 20);
        CHECK(pair_set(p, Relation::Support).size() == 4);
        CHECK(pair_set(p, Relation::Neutral).size() == 16);
    }
    SUBCASE("attack edges are rejected") {
        Argument arg2 = three_node_tree();
        arg2.edges[0].label = Relation::Attack;
        CHECK_THROWS_AS(generate_pairs_type1(arg2), Error);
        CHECK_THROWS_AS(generate_pairs_type2(arg2), Error);
    }
}

TEST_CASE("generate_pairs_type2 is balanced") {
    Argument arg = three_node_tree();
    auto pairs = generate_pairs_type2(arg);
    CHECK(pairs.size() == 4);
    CHECK(pair_set(pairs, Relation::Support) ==
          std::multiset<std::pair<std::string, std::string>>{{"b", "a"}, {"c", "a"}});
    CHECK(pair_set(pairs, Relation::Neutral) ==
          std::multiset<std::pair<std::string, std::string>>{{"a", "b"}, {"a", "c"}});

    // property: equal class counts and subset-of-type1 on random trees
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + static_cast<int>(rng.bounded(7));
        Argument t = testutil::random_tree_argument(n, rng);
        auto p2 = generate_pairs_type2(t);
        auto p1 = generate_pairs_type1(t);
        CHECK(pair_set(p2, Relation::Support).size() ==
              pair_set(p2, Relation::Neutral).size());
        CHECK(pair_set(p2, Relation::Support) == pair_set(p1, Relation::Support));
        CHECK(p1.size() == static_cast<size_t>(n) * (n - 1));
        // every type-2 pair appears among type-1 pairs
        auto all1 = pair_set(p1, Relation::Support);
        for (const auto& q : pair_set(p1, Relation::Neutral)) all1.insert(q);
        for (const auto& p : p2) {
            CHECK(all1.count({p.text_node, p.hypothesis_node}) == 1);
        }
    }
}

TEST_CASE("generate_pairs_multiclass keeps gold labels") {
    SUBCASE("two node attack chain") {
        Argument arg;
        arg.id = "atk";
        arg.kind = StructureKind::Chain;
        arg.nodes = {{"a", "x", {}}, {"b", "y", {}}};
        arg.edges = {{"a", "b", Relation::Attack}};
        auto p = generate_pairs_multiclass(arg);
        REQUIRE(p.size() == 2);
        CHECK(pair_set(p, Relation::Attack) ==
              std::multiset<std::pair<std::string, std::string>>{{"a", "b"}});
        CHECK(pair_set(p, Relation::Neutral) ==
              std::multiset<std::pair<std::string, std::string>>{{"b", "a"}});
    }
    SUBCASE("three node debate: 1 S, 1 A, 4 N") {
        Argument arg = three_node_tree();
        arg.edges[1].label = Relation::Attack;
        auto p = generate_pairs_multiclass(arg);
        CHECK(p.size() == 6);
        CHECK(pair_set(p, Relation::Support).size() == 1);
        CHECK(pair_set(p, Relation::Attack).size() == 1);
        CHECK(pair_set(p, Relation::Neutral).size() == 4);
    }
    SUBCASE("no attack edges: label-equivalent to type-1") {
        Argument arg = three_node_tree();
        auto pm = generate_pairs_multiclass(arg);
        auto p1 = generate_pairs_type1(arg);
        REQUIRE(pm.size() == p1.size());
        for (size_t i = 0; i < pm.size(); ++i) {
            CHECK(pm[i].text_node == p1[i].text_node);
            CHECK(pm[i].label == p1[i].label);
        }
    }
}

TEST_CASE("split_folds balances and partitions") {
    Rng rng(5);
    std::vector<Argument> corpus;
    for (int i = 0; i < 10; ++i) {
        corpus.push_back(testutil::random_tree_argument(3, rng, "a" + std::to_string(i)));
    }
    auto fa = split_folds(corpus, 5, 42);
    CHECK(fa.k == 5);
    std::map<int, int> sizes;
    for (const auto& [id, f] : fa.assignment) sizes[f]++;
    REQUIRE(sizes.size() == 5);
    for (const auto& [f, s] : sizes) CHECK(s == 2);

    SUBCASE("7 arguments into 5 folds: sizes 2,2,1,1,1") {
        corpus.resize(7);
        auto fa7 = split_folds(corpus, 5, 42);
        std::map<int, int> s7;
        for (const auto& [id, f] : fa7.assignment) s7[f]++;
        std::multiset<int> got;
        for (const auto& [f, s] : s7) got.insert(s);
        CHECK(got == std::multiset<int>{1, 1, 1, 2, 2});
    }
    SUBCASE("determinism and partition") {
        auto fa2 = split_folds(corpus, 5, 42);
        CHECK(fa2.assignment == fa.assignment);
        auto fa3 = split_folds(corpus, 5, 43);
        CHECK(fa3.assignment != fa.assignment);  // overwhelmingly likely
        CHECK(fa.assignment.size() == corpus.size());
        for (const auto& a : corpus) CHECK(fa.assignment.count(a.id) == 1);
    }
    SUBCASE("k larger than corpus") {
        CHECK_THROWS_AS(split_folds(corpus, 11, 1), Error);
    }
}

TEST_CASE("corpus round-trips through serialize/parse") {
    Rng rng(17);
    std::vector<Argument> corpus;
    for (int i = 0; i < 8; ++i) {
        auto arg = testutil::random_tree_argument(2 + static_cast<int>(rng.bounded(6)),
                                                  rng, "rt" + std::to_string(i));
        if (i % 3 == 0 && !arg.edges.empty()) arg.edges[0].label = Relation::Attack;
        corpus.push_back(arg);
    }
    corpus.push_back(testutil::chain_argument({"first claim", "second claim", "third claim"}));

    auto round = parse_corpus_text(serialize_corpus(corpus));
    REQUIRE(round.size() == corpus.size());
    for (size_t i = 0; i < corpus.size(); ++i) {
        CHECK(round[i].id == corpus[i].id);
        CHECK(round[i].kind == corpus[i].kind);
        REQUIRE(round[i].nodes.size() == corpus[i].nodes.size());
        for (size_t j = 0; j < corpus[i].nodes.size(); ++j) {
            CHECK(round[i].nodes[j].id == corpus[i].nodes[j].id);
            CHECK(round[i].nodes[j].text == corpus[i].nodes[j].text);
        }
        CHECK(round[i].edges == corpus[i].edges);
    }
}

TEST_CASE("valid trees have exactly n-1 edges") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + static_cast<int>(rng.bounded(9));
        Argument arg = testutil::random_tree_argument(n, rng);
        CHECK(validate_argument(arg).ok);
        CHECK(arg.edges.size() == static_cast<size_t>(n) - 1);
    }
}
