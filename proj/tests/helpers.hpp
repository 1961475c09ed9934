#ifndef ARGSTRUCT_TEST_HELPERS_HPP
#define ARGSTRUCT_TEST_HELPERS_HPP

#include <string>
#include <vector>

#include "argstruct/corpus.hpp"
#include "argstruct/rng.hpp"
#include "argstruct/tokenize.hpp"

namespace testutil {

// Random tree argument with node ids n0..n{n-1}; parents drawn uniformly
// from the already-placed prefix so every labeled rooted tree shape is
// reachable.
inline argstruct::Argument random_tree_argument(int n, argstruct::Rng& rng,
                                                const std::string& id = "arg") {
    argstruct::Argument arg;
    arg.id = id;
    arg.kind = argstruct::StructureKind::Tree;
    for (int i = 0; i < n; ++i) {
        argstruct::PropositionNode node;
        node.id = "n" + std::to_string(i);
        node.text = "proposition " + std::to_string(i);
        node.tokens = {"proposition", std::to_string(i)};
        arg.nodes.push_back(node);
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    for (int i = 1; i < n; ++i) {
        int parent = order[rng.bounded(i)];
        arg.edges.push_back({"n" + std::to_string(order[i]),
                             "n" + std::to_string(parent),
                             argstruct::Relation::Support});
    }
    return arg;
}

inline argstruct::Argument chain_argument(const std::vector<std::string>& texts,
                                          const std::string& id = "chain") {
    argstruct::Argument arg;
    arg.id = id;
    arg.kind = argstruct::StructureKind::Chain;
    for (size_t i = 0; i < texts.size(); ++i) {
        argstruct::PropositionNode node;
        node.id = "c" + std::to_string(i);
        node.text = texts[i];
        node.tokens = argstruct::tokenize(texts[i]);
        arg.nodes.push_back(node);
    }
    for (size_t i = 0; i + 1 < texts.size(); ++i) {
        arg.edges.push_back({"c" + std::to_string(i), "c" + std::to_string(i + 1),
                             argstruct::Relation::Support});
    }
    return arg;
}

}  // namespace testutil

#endif
