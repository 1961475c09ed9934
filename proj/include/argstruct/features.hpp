#ifndef ARGSTRUCT_FEATURES_HPP
#define ARGSTRUCT_FEATURES_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "argstruct/annotator.hpp"
#include "argstruct/corpus.hpp"
#include "argstruct/embeddings.hpp"
#include "argstruct/lexicon.hpp"
#include "argstruct/tokenize.hpp"

namespace argstruct {

using FeatureVector = std::vector<double>;

// Unigrams and bigrams selected by smoothed likelihood ratio between the
// Text and Hypothesis sides of the training edges. Bigrams are stored
// space-joined. Each selected n-gram contributes two features (its count
// on the Text side and on the Hypothesis side), so the feature width is
// 2 * (total selected).
struct NgramVocabulary {
    std::vector<std::string> text_unigrams;
    std::vector<std::string> hyp_unigrams;
    std::vector<std::string> text_bigrams;
    std::vector<std::string> hyp_bigrams;
    double threshold = 3.0;

    size_t selected_count() const {
        return text_unigrams.size() + hyp_unigrams.size() + text_bigrams.size() +
               hyp_bigrams.size();
    }
    size_t feature_width() const { return 2 * selected_count(); }
    bool empty() const { return selected_count() == 0; }
};

enum class FeatureGroup {
    Discourse,   // 11: Text-marker counts then Hypothesis-marker counts
    Modal,       // 16: 8 modals counted on both sides
    Lcp,         // 1: longest common phrase length
    Entity,      // 1: entity-vector inner product
    Ngram,       // 2 * |selected n-grams|
    WordVec,     // 2d: summed word vectors, Text block then Hypothesis block
    Negation,    // 2 * |negation lexicon|
    Contrast,    // 3: antonym pairs, negation parity, negated-overlap
};

const std::vector<std::string>& feature_group_names();
FeatureGroup feature_group_from_string(const std::string& name);
const char* to_string(FeatureGroup g);

struct LayoutEntry {
    FeatureGroup group;
    size_t offset = 0;
    size_t width = 0;
};

struct FeatureLayout {
    std::vector<LayoutEntry> entries;  // enabled groups, in canonical order
    size_t total_width = 0;

    bool has(FeatureGroup g) const;
    // Stable identity: group names, widths and an FNV-1a hash of the fitted
    // artifacts that shape the vector.
    std::string fingerprint;
};

struct FeatureArtifacts {
    NgramVocabulary vocab;
    std::shared_ptr<const EmbeddingTable> embeddings;
    Lexicon negation = default_negation_lexicon();
    AntonymLexicon antonyms;
    std::shared_ptr<EntityAnnotator> annotator;
};

// Builds the layout for the enabled groups and artifacts; throws if an
// enabled group is missing its artifact.
FeatureLayout make_layout(const std::vector<FeatureGroup>& enabled,
                          const FeatureArtifacts& artifacts);

// --- individual feature groups ---

std::vector<double> discourse_marker_features(const TokenSequence& text,
                                              const TokenSequence& hyp);
std::vector<double> modal_features(const TokenSequence& text,
                                   const TokenSequence& hyp);
double longest_common_phrase(const TokenSequence& text, const TokenSequence& hyp);
double entity_overlap(const EntityAnnotation& text_ann,
                      const EntityAnnotation& hyp_ann);
std::vector<double> ngram_features(const TokenSequence& text,
                                   const TokenSequence& hyp,
                                   const NgramVocabulary& vocab);
std::vector<double> wordvec_features(const TokenSequence& text,
                                     const TokenSequence& hyp,
                                     const EmbeddingTable& table);
std::vector<double> negation_marker_features(const TokenSequence& text,
                                             const TokenSequence& hyp,
                                             const Lexicon& lexicon);
std::vector<double> contrast_relation_features(const TokenSequence& text,
                                               const TokenSequence& hyp,
                                               const AntonymLexicon& antonyms,
                                               const Lexicon& negation);

// Fit the n-gram vocabulary on (Text, Hypothesis) token sequences of the
// training edges. Probabilities use add-one smoothing with V = number of
// distinct n-grams of that order across both sides.
NgramVocabulary fit_ngram_vocab(
    const std::vector<std::pair<TokenSequence, TokenSequence>>& pairs,
    double threshold);

std::string vocab_to_json(const NgramVocabulary& vocab);
NgramVocabulary vocab_from_json(const std::string& text);

// Full vector for one ordered pair, concatenated in layout order.
FeatureVector extract(const LabeledPair& pair, const Argument& arg,
                      const FeatureLayout& layout,
                      const FeatureArtifacts& artifacts);

// Row-major matrix of features for many pairs; parallel across pairs when
// `parallel` is set (hot path for training-set construction).
std::vector<FeatureVector> extract_batch(const std::vector<LabeledPair>& pairs,
                                         const std::vector<Argument>& corpus,
                                         const FeatureLayout& layout,
                                         const FeatureArtifacts& artifacts,
                                         bool parallel = true);

}  // namespace argstruct

#endif
