#include "argstruct/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "argstruct/common.hpp"

namespace argstruct {

Lexicon default_negation_lexicon() {
    return {"not",   "no",     "never", "n't",     "can't",  "cannot",
            "won't", "don't",  "neither", "nor",   "without"};
}

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

Lexicon load_lexicon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open lexicon file: " + path);
    Lexicon out;
    std::string line;
    while (std::getline(in, line)) {
        std::string w = strip(line);
        if (w.empty() || w[0] == '#') continue;
        out.push_back(w);
    }
    return out;
}

AntonymLexicon load_antonym_lexicon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open antonym lexicon file: " + path);
    AntonymLexicon out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        size_t tab = s.find('\t');
        if (tab == std::string::npos) {
            throw Error("antonym lexicon line " + std::to_string(lineno) +
                        " is not 'word<TAB>antonym': " + path);
        }
        std::string a = strip(s.substr(0, tab));
        std::string b = strip(s.substr(tab + 1));
        if (a.empty() || b.empty()) continue;
        out[a].insert(b);
        out[b].insert(a);
    }
    return out;
}

bool token_matches_entry(const std::string& token, const std::string& entry,
                         const Lexicon& lexicon) {
    if (token == entry) return true;
    if (entry == "n't" && token.size() > 3 &&
        token.compare(token.size() - 3, 3, "n't") == 0) {
        // only if the full token is not itself a lexicon entry
        return std::find(lexicon.begin(), lexicon.end(), token) == lexicon.end();
    }
    return false;
}

bool is_negation_token(const std::string& token, const Lexicon& lexicon) {
    for (const auto& entry : lexicon) {
        if (token_matches_entry(token, entry, lexicon)) return true;
    }
    return false;
}

}  // namespace argstruct
