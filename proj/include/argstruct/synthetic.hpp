#ifndef ARGSTRUCT_SYNTHETIC_HPP
#define ARGSTRUCT_SYNTHETIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "argstruct/corpus.hpp"
#include "argstruct/embeddings.hpp"

namespace argstruct {

// Synthetic corpora with a planted, learnable structure signal: roots talk
// like conclusions ("therefore ... verdict"), premises like evidence
// ("since ..."), and each parent/child pair shares a capitalized phrase,
// so discourse, word-vector, n-gram, entity and LCP features all carry
// signal. Attack edges add negation/antonym cues.
struct SyntheticSpec {
    int arguments = 100;
    int min_nodes = 3;
    int max_nodes = 6;
    uint64_t seed = 7;
    double attack_fraction = 0.0;   // fraction of edges flipped to Attack
    bool chains = false;            // wikipedia-style linear arguments
    bool discourse_markers = true;  // plant "therefore"/"since" cue words
    bool shared_phrases = true;     // capitalized runs shared along gold edges
};

std::vector<Argument> generate_planted_corpus(const SyntheticSpec& spec);

// Toy embedding table aligned with the planted vocabulary: each role word
// sits on its own axis. Topic and filler words stay out of vocabulary.
EmbeddingTable planted_embeddings();
void write_planted_embeddings(const std::string& path);

// matching lexicon fixtures for the Attack experiments
void write_planted_antonyms(const std::string& path);

}  // namespace argstruct

#endif
