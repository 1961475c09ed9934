#include "argstruct/features.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "argstruct/common.hpp"

namespace argstruct {

namespace {

const std::vector<std::string> kTextMarkers = {"as", "or", "and", "roughly", "then", "since"};
const std::vector<std::string> kHypMarkers = {"therefore", "however", "though", "but", "quite"};
const std::vector<std::string> kModals = {"can", "could", "may", "might",
                                          "must", "will", "would", "should"};

double count_token(const TokenSequence& seq, const std::string& word) {
    return static_cast<double>(std::count(seq.begin(), seq.end(), word));
}

// FNV-1a over the artifact content that shapes the layout.
uint64_t fnv1a(const std::string& s, uint64_t h) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

const std::vector<std::string>& feature_group_names() {
    static const std::vector<std::string> names = {
        "discourse", "modal", "lcp", "entity", "ngram", "wordvec", "negation", "contrast"};
    return names;
}

const char* to_string(FeatureGroup g) {
    switch (g) {
        case FeatureGroup::Discourse: return "discourse";
        case FeatureGroup::Modal:     return "modal";
        case FeatureGroup::Lcp:       return "lcp";
        case FeatureGroup::Entity:    return "entity";
        case FeatureGroup::Ngram:     return "ngram";
        case FeatureGroup::WordVec:   return "wordvec";
        case FeatureGroup::Negation:  return "negation";
        case FeatureGroup::Contrast:  return "contrast";
    }
    return "?";
}

FeatureGroup feature_group_from_string(const std::string& name) {
    for (size_t i = 0; i < feature_group_names().size(); ++i) {
        if (feature_group_names()[i] == name) return static_cast<FeatureGroup>(i);
    }
    std::string valid;
    for (const auto& n : feature_group_names()) {
        if (!valid.empty()) valid += ", ";
        valid += n;
    }
    throw Error("unknown feature group '" + name + "' (valid: " + valid + ")");
}

bool FeatureLayout::has(FeatureGroup g) const {
    return std::any_of(entries.begin(), entries.end(),
                       [g](const LayoutEntry& e) { return e.group == g; });
}

std::vector<double> discourse_marker_features(const TokenSequence& text,
                                              const TokenSequence& hyp) {
    std::vector<double> out;
    out.reserve(kTextMarkers.size() + kHypMarkers.size());
    for (const auto& w : kTextMarkers) out.push_back(count_token(text, w));
    for (const auto& w : kHypMarkers) out.push_back(count_token(hyp, w));
    return out;
}

std::vector<double> modal_features(const TokenSequence& text,
                                   const TokenSequence& hyp) {
    std::vector<double> out;
    out.reserve(kModals.size() * 2);
    for (const auto& w : kModals) out.push_back(count_token(text, w));
    for (const auto& w : kModals) out.push_back(count_token(hyp, w));
    return out;
}

double longest_common_phrase(const TokenSequence& text, const TokenSequence& hyp) {
    if (text.empty() || hyp.empty()) return 0.0;
    // classic longest-common-substring DP over tokens
    size_t n = text.size(), m = hyp.size();
    std::vector<int> prev(m + 1, 0), cur(m + 1, 0);
    int best = 0;
    for (size_t i = 1; i <= n; ++i) {
        for (size_t j = 1; j <= m; ++j) {
            if (text[i - 1] == hyp[j - 1]) {
                cur[j] = prev[j - 1] + 1;
                best = std::max(best, cur[j]);
            } else {
                cur[j] = 0;
            }
        }
        std::swap(prev, cur);
    }
    return static_cast<double>(best);
}

double entity_overlap(const EntityAnnotation& text_ann,
                      const EntityAnnotation& hyp_ann) {
    double dot = 0.0;
    for (const auto& [key, count] : text_ann) {
        auto it = hyp_ann.find(key);
        if (it != hyp_ann.end()) dot += static_cast<double>(count) * it->second;
    }
    return dot;
}

namespace {

void count_ngrams(const TokenSequence& toks, std::map<std::string, long>& uni,
                  std::map<std::string, long>& bi, long& uni_total, long& bi_total) {
    for (const auto& t : toks) {
        uni[t]++;
        ++uni_total;
    }
    for (size_t i = 0; i + 1 < toks.size(); ++i) {
        bi[toks[i] + " " + toks[i + 1]]++;
        ++bi_total;
    }
}

void select_side(const std::map<std::string, long>& text_counts,
                 const std::map<std::string, long>& hyp_counts,
                 long text_total, long hyp_total, double threshold,
                 std::vector<std::string>& text_list,
                 std::vector<std::string>& hyp_list) {
    std::set<std::string> all;
    for (const auto& [g, c] : text_counts) all.insert(g);
    for (const auto& [g, c] : hyp_counts) all.insert(g);
    double v = static_cast<double>(all.size());
    for (const auto& g : all) {
        auto ti = text_counts.find(g);
        auto hi = hyp_counts.find(g);
        double ct = ti == text_counts.end() ? 0.0 : static_cast<double>(ti->second);
        double ch = hi == hyp_counts.end() ? 0.0 : static_cast<double>(hi->second);
        double pt = (ct + 1.0) / (static_cast<double>(text_total) + v);
        double ph = (ch + 1.0) / (static_cast<double>(hyp_total) + v);
        if (pt / ph >= threshold) {
            text_list.push_back(g);
        } else if (ph / pt >= threshold) {
            hyp_list.push_back(g);
        }
    }
    // std::set iteration is already lexicographic; keep the sort explicit
    // since the layout contract depends on it.
    std::sort(text_list.begin(), text_list.end());
    std::sort(hyp_list.begin(), hyp_list.end());
}

}  // namespace

NgramVocabulary fit_ngram_vocab(
    const std::vector<std::pair<TokenSequence, TokenSequence>>& pairs,
    double threshold) {
    if (pairs.empty()) throw Error("fit_ngram_vocab: no training pairs");
    if (threshold <= 1.0) throw Error("fit_ngram_vocab: threshold must exceed 1");

    std::map<std::string, long> text_uni, text_bi, hyp_uni, hyp_bi;
    long text_uni_total = 0, text_bi_total = 0, hyp_uni_total = 0, hyp_bi_total = 0;
    for (const auto& [text, hyp] : pairs) {
        count_ngrams(text, text_uni, text_bi, text_uni_total, text_bi_total);
        count_ngrams(hyp, hyp_uni, hyp_bi, hyp_uni_total, hyp_bi_total);
    }

    NgramVocabulary vocab;
    vocab.threshold = threshold;
    select_side(text_uni, hyp_uni, text_uni_total, hyp_uni_total, threshold,
                vocab.text_unigrams, vocab.hyp_unigrams);
    select_side(text_bi, hyp_bi, text_bi_total, hyp_bi_total, threshold,
                vocab.text_bigrams, vocab.hyp_bigrams);
    return vocab;
}

std::string vocab_to_json(const NgramVocabulary& vocab) {
    nlohmann::json out = {{"threshold", vocab.threshold},
                          {"text_unigrams", vocab.text_unigrams},
                          {"hyp_unigrams", vocab.hyp_unigrams},
                          {"text_bigrams", vocab.text_bigrams},
                          {"hyp_bigrams", vocab.hyp_bigrams}};
    return out.dump(2) + "\n";
}

NgramVocabulary vocab_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("vocabulary file is not valid JSON: ") + e.what());
    }
    NgramVocabulary vocab;
    try {
        vocab.threshold = doc.at("threshold").get<double>();
        vocab.text_unigrams = doc.at("text_unigrams").get<std::vector<std::string>>();
        vocab.hyp_unigrams = doc.at("hyp_unigrams").get<std::vector<std::string>>();
        vocab.text_bigrams = doc.at("text_bigrams").get<std::vector<std::string>>();
        vocab.hyp_bigrams = doc.at("hyp_bigrams").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed vocabulary file: ") + e.what());
    }
    return vocab;
}

namespace {

double count_ngram_in(const TokenSequence& toks, const std::string& gram, bool bigram) {
    if (!bigram) return count_token(toks, gram);
    double c = 0;
    size_t space = gram.find(' ');
    std::string first = gram.substr(0, space);
    std::string second = gram.substr(space + 1);
    for (size_t i = 0; i + 1 < toks.size(); ++i) {
        if (toks[i] == first && toks[i + 1] == second) ++c;
    }
    return c;
}

}  // namespace

std::vector<double> ngram_features(const TokenSequence& text,
                                   const TokenSequence& hyp,
                                   const NgramVocabulary& vocab) {
    std::vector<double> out;
    out.reserve(vocab.feature_width());
    auto emit = [&](const std::vector<std::string>& list, bool bigram) {
        for (const auto& g : list) {
            out.push_back(count_ngram_in(text, g, bigram));
            out.push_back(count_ngram_in(hyp, g, bigram));
        }
    };
    emit(vocab.text_unigrams, false);
    emit(vocab.hyp_unigrams, false);
    emit(vocab.text_bigrams, true);
    emit(vocab.hyp_bigrams, true);
    return out;
}

std::vector<double> wordvec_features(const TokenSequence& text,
                                     const TokenSequence& hyp,
                                     const EmbeddingTable& table) {
    size_t d = static_cast<size_t>(table.dimension());
    std::vector<double> out(2 * d, 0.0);
    for (const auto& t : text) {
        if (const auto* v = table.lookup(t)) {
            for (size_t i = 0; i < d; ++i) out[i] += (*v)[i];
        }
    }
    for (const auto& t : hyp) {
        if (const auto* v = table.lookup(t)) {
            for (size_t i = 0; i < d; ++i) out[d + i] += (*v)[i];
        }
    }
    return out;
}

std::vector<double> negation_marker_features(const TokenSequence& text,
                                             const TokenSequence& hyp,
                                             const Lexicon& lexicon) {
    std::vector<double> out;
    out.reserve(2 * lexicon.size());
    for (const auto& entry : lexicon) {
        double c = 0;
        for (const auto& t : text) {
            if (token_matches_entry(t, entry, lexicon)) ++c;
        }
        out.push_back(c);
    }
    for (const auto& entry : lexicon) {
        double c = 0;
        for (const auto& t : hyp) {
            if (token_matches_entry(t, entry, lexicon)) ++c;
        }
        out.push_back(c);
    }
    return out;
}

namespace {

// token positions negated = preceded within 2 tokens by a negation token
std::vector<char> negated_positions(const TokenSequence& toks, const Lexicon& negation) {
    std::vector<char> out(toks.size(), 0);
    for (size_t i = 0; i < toks.size(); ++i) {
        for (size_t back = 1; back <= 2 && back <= i; ++back) {
            if (is_negation_token(toks[i - back], negation)) {
                out[i] = 1;
                break;
            }
        }
    }
    return out;
}

bool contains_negation(const TokenSequence& toks, const Lexicon& negation) {
    return std::any_of(toks.begin(), toks.end(), [&](const std::string& t) {
        return is_negation_token(t, negation);
    });
}

}  // namespace

std::vector<double> contrast_relation_features(const TokenSequence& text,
                                               const TokenSequence& hyp,
                                               const AntonymLexicon& antonyms,
                                               const Lexicon& negation) {
    double antonym_pairs = 0;
    for (const auto& t : text) {
        auto it = antonyms.find(t);
        if (it == antonyms.end()) continue;
        for (const auto& h : hyp) {
            if (it->second.count(h)) ++antonym_pairs;
        }
    }

    double parity = contains_negation(text, negation) != contains_negation(hyp, negation)
                        ? 1.0 : 0.0;

    std::vector<char> text_neg = negated_positions(text, negation);
    std::vector<char> hyp_neg = negated_positions(hyp, negation);
    auto classify = [](const TokenSequence& toks, const std::vector<char>& neg) {
        std::map<std::string, std::pair<bool, bool>> m;  // token -> (negated, plain)
        for (size_t i = 0; i < toks.size(); ++i) {
            auto& e = m[toks[i]];
            (neg[i] ? e.first : e.second) = true;
        }
        return m;
    };
    auto tm = classify(text, text_neg);
    auto hm = classify(hyp, hyp_neg);
    double flipped = 0;
    for (const auto& [tok, flags] : tm) {
        auto it = hm.find(tok);
        if (it == hm.end()) continue;
        if (flags.first && it->second.second) ++flipped;  // negated in text, plain in hyp
        if (flags.second && it->second.first) ++flipped;  // plain in text, negated in hyp
    }
    return {antonym_pairs, parity, flipped};
}

FeatureLayout make_layout(const std::vector<FeatureGroup>& enabled,
                          const FeatureArtifacts& artifacts) {
    if (enabled.empty()) throw Error("feature mask must enable at least one group");

    // canonical order regardless of the order groups were requested in
    std::set<FeatureGroup> want(enabled.begin(), enabled.end());
    FeatureLayout layout;
    uint64_t hash = 1469598103934665603ULL;
    size_t offset = 0;
    auto add = [&](FeatureGroup g, size_t width) {
        layout.entries.push_back({g, offset, width});
        offset += width;
        hash = fnv1a(std::string(to_string(g)) + ":" + std::to_string(width) + ";", hash);
    };

    for (FeatureGroup g : {FeatureGroup::Discourse, FeatureGroup::Modal,
                           FeatureGroup::Lcp, FeatureGroup::Entity,
                           FeatureGroup::Ngram, FeatureGroup::WordVec,
                           FeatureGroup::Negation, FeatureGroup::Contrast}) {
        if (!want.count(g)) continue;
        switch (g) {
            case FeatureGroup::Discourse: add(g, 11); break;
            case FeatureGroup::Modal:     add(g, 16); break;
            case FeatureGroup::Lcp:       add(g, 1); break;
            case FeatureGroup::Entity:
                if (!artifacts.annotator) {
                    throw Error("entity group enabled but no annotator configured");
                }
                add(g, 1);
                break;
            case FeatureGroup::Ngram: {
                add(g, artifacts.vocab.feature_width());
                for (const auto& list :
                     {artifacts.vocab.text_unigrams, artifacts.vocab.hyp_unigrams,
                      artifacts.vocab.text_bigrams, artifacts.vocab.hyp_bigrams}) {
                    for (const auto& gram : list) hash = fnv1a(gram + "|", hash);
                }
                break;
            }
            case FeatureGroup::WordVec:
                if (!artifacts.embeddings) {
                    throw Error("wordvec group enabled but no embedding table loaded");
                }
                add(g, 2 * static_cast<size_t>(artifacts.embeddings->dimension()));
                break;
            case FeatureGroup::Negation:
                add(g, 2 * artifacts.negation.size());
                for (const auto& w : artifacts.negation) hash = fnv1a(w + "|", hash);
                break;
            case FeatureGroup::Contrast:
                add(g, 3);
                for (const auto& [w, ants] : artifacts.antonyms) {
                    hash = fnv1a(w + "|", hash);
                }
                break;
        }
    }
    layout.total_width = offset;

    std::ostringstream fp;
    fp << "w" << layout.total_width;
    for (const auto& e : layout.entries) {
        fp << ";" << to_string(e.group) << ":" << e.width;
    }
    fp << ";h" << std::hex << hash;
    layout.fingerprint = fp.str();
    return layout;
}

FeatureVector extract(const LabeledPair& pair, const Argument& arg,
                      const FeatureLayout& layout,
                      const FeatureArtifacts& artifacts) {
    const PropositionNode* text_node = arg.find_node(pair.text_node);
    const PropositionNode* hyp_node = arg.find_node(pair.hypothesis_node);
    if (!text_node || !hyp_node) {
        throw Error("pair references nodes missing from argument '" + arg.id + "'");
    }
    const TokenSequence& text = text_node->tokens;
    const TokenSequence& hyp = hyp_node->tokens;

    FeatureVector out;
    out.reserve(layout.total_width);
    auto append = [&](const std::vector<double>& v) {
        out.insert(out.end(), v.begin(), v.end());
    };

    for (const auto& e : layout.entries) {
        switch (e.group) {
            case FeatureGroup::Discourse: append(discourse_marker_features(text, hyp)); break;
            case FeatureGroup::Modal:     append(modal_features(text, hyp)); break;
            case FeatureGroup::Lcp:       out.push_back(longest_common_phrase(text, hyp)); break;
            case FeatureGroup::Entity: {
                EntityAnnotation ta = artifacts.annotator->annotate(text_node->text);
                EntityAnnotation ha = artifacts.annotator->annotate(hyp_node->text);
                out.push_back(entity_overlap(ta, ha));
                break;
            }
            case FeatureGroup::Ngram:
                append(ngram_features(text, hyp, artifacts.vocab));
                break;
            case FeatureGroup::WordVec:
                append(wordvec_features(text, hyp, *artifacts.embeddings));
                break;
            case FeatureGroup::Negation:
                append(negation_marker_features(text, hyp, artifacts.negation));
                break;
            case FeatureGroup::Contrast:
                append(contrast_relation_features(text, hyp, artifacts.antonyms,
                                                  artifacts.negation));
                break;
        }
    }
    if (out.size() != layout.total_width) {
        throw Error("feature width mismatch: got " + std::to_string(out.size()) +
                    ", layout says " + std::to_string(layout.total_width));
    }
    return out;
}

std::vector<FeatureVector> extract_batch(const std::vector<LabeledPair>& pairs,
                                         const std::vector<Argument>& corpus,
                                         const FeatureLayout& layout,
                                         const FeatureArtifacts& artifacts,
                                         bool parallel) {
    // arguments indexed once; pairs reference them by id
    std::map<std::string, const Argument*> by_id;
    for (const auto& a : corpus) by_id[a.id] = &a;
    for (const auto& p : pairs) {
        if (!by_id.count(p.argument_id)) {
            throw Error("pair references unknown argument '" + p.argument_id + "'");
        }
    }

    std::vector<FeatureVector> rows(pairs.size());
    std::exception_ptr failure;
#ifdef _OPENMP
    #pragma omp parallel for schedule(dynamic, 16) if (parallel)
#endif
    for (long i = 0; i < static_cast<long>(pairs.size()); ++i) {
        try {
            rows[i] = extract(pairs[i], *by_id.at(pairs[i].argument_id), layout, artifacts);
        } catch (...) {
#ifdef _OPENMP
            #pragma omp critical
#endif
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

}  // namespace argstruct
