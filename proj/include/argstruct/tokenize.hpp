#ifndef ARGSTRUCT_TOKENIZE_HPP
#define ARGSTRUCT_TOKENIZE_HPP

#include <string>
#include <vector>

namespace argstruct {

using TokenSequence = std::vector<std::string>;

// Whitespace split, ASCII-lowercase, strip leading/trailing punctuation.
// Internal apostrophes survive, so "Can't" becomes "can't".
TokenSequence tokenize(const std::string& text);

// Same splitting and punctuation stripping but case is preserved; used by
// the offline entity annotator, which keys on capitalization.
TokenSequence tokenize_preserve_case(const std::string& text);

}  // namespace argstruct

#endif
