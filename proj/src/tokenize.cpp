#include "argstruct/tokenize.hpp"

#include <cctype>

namespace argstruct {

namespace {

inline bool is_space(unsigned char c) { return std::isspace(c) != 0; }

// ASCII punctuation only; multi-byte UTF-8 sequences are never stripped.
inline bool is_punct(unsigned char c) { return c < 0x80 && std::ispunct(c) != 0; }

TokenSequence split_and_strip(const std::string& text, bool lowercase) {
    TokenSequence out;
    size_t i = 0, n = text.size();
    while (i < n) {
        while (i < n && is_space(static_cast<unsigned char>(text[i]))) ++i;
        size_t start = i;
        while (i < n && !is_space(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) break;
        size_t lo = start, hi = i;
        while (lo < hi && is_punct(static_cast<unsigned char>(text[lo]))) ++lo;
        while (hi > lo && is_punct(static_cast<unsigned char>(text[hi - 1]))) --hi;
        if (lo == hi) continue;  // token was all punctuation
        std::string tok = text.substr(lo, hi - lo);
        if (lowercase) {
            for (char& c : tok) {
                c = static_cast<char>(
                    std::tolower(static_cast<unsigned char>(c)));
            }
        }
        out.push_back(std::move(tok));
    }
    return out;
}

}  // namespace

TokenSequence tokenize(const std::string& text) {
    return split_and_strip(text, true);
}

TokenSequence tokenize_preserve_case(const std::string& text) {
    return split_and_strip(text, false);
}

}  // namespace argstruct
