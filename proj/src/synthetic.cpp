#include "argstruct/synthetic.hpp"

#include <fstream>

#include "argstruct/rng.hpp"
#include "argstruct/tokenize.hpp"

namespace argstruct {

namespace {

const std::vector<std::string> kRoleWords = {
    "therefore", "verdict", "stands",   "overall", "beneficial", "thus",
    "claim",     "since",   "evidence", "never",   "harmful",    "indeed"};

PropositionNode make_node(const std::string& id, const std::string& text) {
    return {id, text, tokenize(text)};
}

std::string shared_phrase(int arg_index, int anchor) {
    // capitalized two-word run: one entity key, LCP 2 after lowercasing
    return "Shared" + std::to_string(arg_index) + "x" + std::to_string(anchor) +
           " Point" + std::to_string(arg_index) + "x" + std::to_string(anchor);
}

}  // namespace

std::vector<Argument> generate_planted_corpus(const SyntheticSpec& spec) {
    std::vector<Argument> corpus;
    Rng rng(spec.seed);
    for (int a = 0; a < spec.arguments; ++a) {
        int n = spec.min_nodes +
                static_cast<int>(rng.bounded(
                    static_cast<uint64_t>(spec.max_nodes - spec.min_nodes + 1)));
        std::string topic = "Topic" + std::to_string(a);
        std::string conclusion_cue =
            spec.discourse_markers ? " therefore the verdict stands overall beneficial"
                                   : " the verdict stands overall beneficial";
        std::string premise_cue = spec.discourse_markers ? " since evidence" : " evidence";

        Argument arg;
        arg.id = "planted" + std::to_string(a);

        if (spec.chains) {
            arg.kind = StructureKind::Chain;
            // consecutive revisions share a segment phrase; later revisions
            // sound more conclusive
            for (int i = 0; i < n; ++i) {
                std::string text = topic + " revision indeed";
                if (spec.shared_phrases && i > 0) text += " " + shared_phrase(a, i - 1);
                if (spec.shared_phrases && i + 1 < n) text += " " + shared_phrase(a, i);
                if (i == 0) text += premise_cue;
                if (i == n - 1) text += conclusion_cue;
                arg.nodes.push_back(make_node("n" + std::to_string(i), text));
            }
            for (int i = 0; i + 1 < n; ++i) {
                arg.edges.push_back({"n" + std::to_string(i), "n" + std::to_string(i + 1),
                                     Relation::Support});
            }
        } else {
            arg.kind = StructureKind::Tree;
            // root 0; 70% stars, otherwise one mid node under the root with
            // the remaining nodes split between root and mid
            arg.nodes.push_back(make_node("n0", topic + conclusion_cue));
            std::vector<int> parent_of(static_cast<size_t>(n), 0);
            bool star = rng.uniform() < 0.7 || n < 4;
            if (!star) {
                std::string mid = topic + " thus the claim holds";
                if (spec.shared_phrases) mid += " " + shared_phrase(a, 1);
                arg.nodes.push_back(make_node("n1", mid));
                parent_of[1] = 0;
                for (int i = 2; i < n; ++i) parent_of[i] = rng.uniform() < 0.5 ? 0 : 1;
            }
            for (int i = star ? 1 : 2; i < n; ++i) {
                std::string text = topic + premise_cue + " item" + std::to_string(i);
                if (spec.shared_phrases && parent_of[i] == 1) {
                    text += " " + shared_phrase(a, 1);
                }
                arg.nodes.push_back(make_node("n" + std::to_string(i), text));
            }
            for (int i = 1; i < n; ++i) {
                arg.edges.push_back({"n" + std::to_string(i),
                                     "n" + std::to_string(parent_of[i]),
                                     Relation::Support});
            }
        }

        if (spec.attack_fraction > 0.0) {
            for (auto& e : arg.edges) {
                if (rng.uniform() < spec.attack_fraction) {
                    e.label = Relation::Attack;
                    // rewrite the child so attack edges carry negation and
                    // antonym cues against the parent's "beneficial"
                    for (auto& node : arg.nodes) {
                        if (node.id != e.from) continue;
                        node.text += " never harmful";
                        node.tokens = tokenize(node.text);
                    }
                }
            }
        }
        corpus.push_back(std::move(arg));
    }
    return corpus;
}

EmbeddingTable planted_embeddings() {
    int d = static_cast<int>(kRoleWords.size());
    EmbeddingTable table(d);
    for (size_t i = 0; i < kRoleWords.size(); ++i) {
        std::vector<double> v(static_cast<size_t>(d), 0.0);
        v[i] = 1.0;
        table.insert(kRoleWords[i], std::move(v));
    }
    return table;
}

void write_planted_embeddings(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write embeddings fixture: " + path);
    out << kRoleWords.size() << " " << kRoleWords.size() << "\n";
    for (size_t i = 0; i < kRoleWords.size(); ++i) {
        out << kRoleWords[i];
        for (size_t j = 0; j < kRoleWords.size(); ++j) {
            out << " " << (i == j ? 1 : 0);
        }
        out << "\n";
    }
}

void write_planted_antonyms(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write antonym fixture: " + path);
    out << "harmful\tbeneficial\n";
}

}  // namespace argstruct
