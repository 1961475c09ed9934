#ifndef ARGSTRUCT_COMMON_HPP
#define ARGSTRUCT_COMMON_HPP

#include <stdexcept>
#include <string>

namespace argstruct {

// Library-wide error type. Message strings are single-line so the CLI can
// forward them verbatim in machine-readable form.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

enum class Relation { Support, Attack, Neutral };

enum class StructureKind { Tree, Chain };

inline const char* to_string(Relation r) {
    switch (r) {
        case Relation::Support: return "support";
        case Relation::Attack:  return "attack";
        case Relation::Neutral: return "neutral";
    }
    return "?";
}

inline const char* to_string(StructureKind k) {
    return k == StructureKind::Tree ? "tree" : "chain";
}

inline Relation relation_from_string(const std::string& s) {
    if (s == "support") return Relation::Support;
    if (s == "attack")  return Relation::Attack;
    if (s == "neutral") return Relation::Neutral;
    throw Error("unknown relation label: '" + s + "'");
}

inline StructureKind kind_from_string(const std::string& s) {
    if (s == "tree")  return StructureKind::Tree;
    if (s == "chain") return StructureKind::Chain;
    throw Error("unknown structure kind: '" + s + "'");
}

}  // namespace argstruct

#endif
