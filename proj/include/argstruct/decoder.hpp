#ifndef ARGSTRUCT_DECODER_HPP
#define ARGSTRUCT_DECODER_HPP

#include <optional>
#include <string>
#include <vector>

#include "argstruct/scoring.hpp"

namespace argstruct {

// Dense candidate-edge weights for one argument; entry (child, parent)
// weighs the directed edge child -> parent. Weights may be negative (the
// single-step scores are differences), the decoders still return a
// complete structure.
struct EdgeWeights {
    std::string argument_id;
    std::vector<std::string> node_ids;
    std::vector<double> w;

    size_t n() const { return node_ids.size(); }
    double at(size_t child, size_t parent) const { return w[child * n() + parent]; }
    double& at(size_t child, size_t parent) { return w[child * n() + parent]; }

    static EdgeWeights from_support(const ScoreMatrix& scores);
};

struct PredictedEdge {
    std::string child;
    std::string parent;
    std::optional<Relation> label;
};

struct PredictedStructure {
    std::string argument_id;
    StructureKind kind = StructureKind::Tree;
    std::vector<PredictedEdge> edges;  // ordered by child position
    double total_score = 0.0;
    std::string decoder;
};

// Argmax over all rooted trees by the recursive level-set enumeration,
// each node attaching to its best-scoring parent in the previous level.
// Exponential in n; refuses above the cap. Parallel over root choices.
PredictedStructure best_tree_exhaustive(const EdgeWeights& weights, int max_nodes = 10);
PredictedStructure best_tree_exhaustive_serial(const EdgeWeights& weights,
                                               int max_nodes = 10);

// Polynomial equivalent: maximum-weight spanning structure in which every
// non-root node has exactly one parent, via Chu-Liu/Edmonds run once per
// candidate root. Totals match the exhaustive decoder on any input.
PredictedStructure best_arborescence(const EdgeWeights& weights);
PredictedStructure best_arborescence_serial(const EdgeWeights& weights);

// Maximum-score directed Hamiltonian path (child -> parent along the
// chain) by exhaustive permutation search.
PredictedStructure best_chain(const EdgeWeights& weights, int max_nodes = 8);
PredictedStructure best_chain_serial(const EdgeWeights& weights, int max_nodes = 8);

// Two-Step: the Detection scores fix the structure, then the Resolver
// labels each chosen edge Support or Attack.
PredictedStructure decode_two_step(const ScoreMatrix& detection,
                                   const AnyModel& resolver,
                                   const FeatureLayout& resolver_layout,
                                   const FeatureArtifacts& resolver_artifacts,
                                   const Argument& arg, StructureKind kind,
                                   int tree_cap = 10, int chain_cap = 8);

// Single-Step: candidate weight max(conf_S, conf_A) - conf_N, labeled by
// the winning relation.
PredictedStructure decode_single_step(const ScoreMatrix& multiclass,
                                      StructureKind kind, int tree_cap = 10,
                                      int chain_cap = 8);

// Throws if the structure violates its kind's invariants over node_ids.
void check_structure(const PredictedStructure& ps,
                     const std::vector<std::string>& node_ids);

}  // namespace argstruct

#endif
