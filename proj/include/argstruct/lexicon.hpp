#ifndef ARGSTRUCT_LEXICON_HPP
#define ARGSTRUCT_LEXICON_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

namespace argstruct {

// Ordered word list; order fixes the feature layout.
using Lexicon = std::vector<std::string>;

// word -> set of antonyms; stored symmetrically.
using AntonymLexicon = std::map<std::string, std::set<std::string>>;

// Default negation markers used when no lexicon file is supplied.
Lexicon default_negation_lexicon();

// One word per line, '#' comments and blank lines skipped.
Lexicon load_lexicon(const std::string& path);

// One "word<TAB>antonym" pair per line; both directions are recorded.
AntonymLexicon load_antonym_lexicon(const std::string& path);

// True if the token counts as `entry`. Exact match, plus a catch-all for
// the "n't" entry: contraction tokens ending in n't that have no exact
// entry of their own ("shouldn't") count toward it.
bool token_matches_entry(const std::string& token, const std::string& entry,
                         const Lexicon& lexicon);

bool is_negation_token(const std::string& token, const Lexicon& lexicon);

}  // namespace argstruct

#endif
