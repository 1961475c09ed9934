#ifndef ARGSTRUCT_CORPUS_HPP
#define ARGSTRUCT_CORPUS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "argstruct/common.hpp"

namespace argstruct {

struct PropositionNode {
    std::string id;
    std::string text;
    // Lowercased word tokens of `text`, derived once at construction so the
    // node stays immutable and shareable across threads.
    std::vector<std::string> tokens;
};

struct Edge {
    std::string from;  // child / Text node
    std::string to;    // parent / Hypothesis node
    Relation label = Relation::Support;

    bool operator==(const Edge& o) const {
        return from == o.from && to == o.to && label == o.label;
    }
};

// A set of propositions plus gold directed labeled edges. Edges point
// child -> parent: for Support "271 -> 270", node 271 is the Text node and
// 270 the Hypothesis node.
struct Argument {
    std::string id;
    StructureKind kind = StructureKind::Tree;
    std::vector<PropositionNode> nodes;
    std::vector<Edge> edges;

    const PropositionNode* find_node(const std::string& node_id) const;
    int node_index(const std::string& node_id) const;  // -1 if absent
    bool has_attack_edges() const;
};

struct LabeledPair {
    std::string argument_id;
    std::string text_node;        // n1
    std::string hypothesis_node;  // n2
    Relation label = Relation::Neutral;
};

struct ValidationReport {
    bool ok = true;
    std::string violation;  // first violated invariant, with offending ids
    bool oversize = false;  // more nodes than the configured cap; not a failure
};

struct FoldAssignment {
    int k = 0;
    std::map<std::string, int> assignment;  // argument id -> fold in [0, k)
};

// Canonical corpus document: {"arguments": [...]}, UTF-8, unknown keys
// rejected. See README for the full schema.
std::vector<Argument> parse_corpus(const std::string& path);
std::vector<Argument> parse_corpus_text(const std::string& json_text);
std::string serialize_corpus(const std::vector<Argument>& args);
void write_corpus(const std::string& path, const std::vector<Argument>& args);

ValidationReport validate_argument(const Argument& arg, int node_cap = 10);

// Training-pair generation. type-1: every non-Support ordered pair is
// Neutral (n*(n-1) pairs total). type-2: only the reversal of each gold
// edge is Neutral (balanced). multiclass: gold Support/Attack labels kept,
// all remaining ordered pairs Neutral.
std::vector<LabeledPair> generate_pairs_type1(const Argument& arg);
std::vector<LabeledPair> generate_pairs_type2(const Argument& arg);
std::vector<LabeledPair> generate_pairs_multiclass(const Argument& arg);

// Seeded shuffle + round-robin deal; fold sizes differ by at most 1.
FoldAssignment split_folds(const std::vector<Argument>& corpus, int k,
                           uint64_t seed);

}  // namespace argstruct

#endif
