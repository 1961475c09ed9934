#include "argstruct/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "argstruct/rng.hpp"
#include "argstruct/tokenize.hpp"

namespace argstruct {

using nlohmann::json;

const PropositionNode* Argument::find_node(const std::string& node_id) const {
    for (const auto& n : nodes) {
        if (n.id == node_id) return &n;
    }
    return nullptr;
}

int Argument::node_index(const std::string& node_id) const {
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id == node_id) return static_cast<int>(i);
    }
    return -1;
}

bool Argument::has_attack_edges() const {
    return std::any_of(edges.begin(), edges.end(), [](const Edge& e) {
        return e.label == Relation::Attack;
    });
}

namespace {

std::string trimmed(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) { known = true; break; }
        }
        if (!known) {
            throw Error("corpus schema violation at " + where +
                        ": unknown field '" + it.key() + "'");
        }
    }
}

const json& require_field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw Error("corpus schema violation at " + where +
                    ": missing field '" + std::string(key) + "'");
    }
    return *it;
}

Argument parse_argument(const json& j, size_t pos) {
    std::string where = "arguments[" + std::to_string(pos) + "]";
    if (!j.is_object()) throw Error("corpus schema violation at " + where + ": not an object");
    reject_unknown_keys(j, {"id", "kind", "nodes", "edges"}, where);

    Argument arg;
    const json& jid = require_field(j, "id", where);
    if (!jid.is_string()) throw Error("corpus schema violation at " + where + ": 'id' must be a string");
    arg.id = jid.get<std::string>();
    where = "argument '" + arg.id + "'";

    const json& jkind = require_field(j, "kind", where);
    if (!jkind.is_string()) throw Error("corpus schema violation at " + where + ": 'kind' must be a string");
    arg.kind = kind_from_string(jkind.get<std::string>());

    const json& jnodes = require_field(j, "nodes", where);
    if (!jnodes.is_array()) throw Error("corpus schema violation at " + where + ": 'nodes' must be an array");
    for (const auto& jn : jnodes) {
        if (!jn.is_object()) throw Error("corpus schema violation at " + where + ": node is not an object");
        reject_unknown_keys(jn, {"id", "text"}, where + " node");
        PropositionNode node;
        node.id = require_field(jn, "id", where + " node").get<std::string>();
        node.text = require_field(jn, "text", where + " node").get<std::string>();
        node.tokens = tokenize(node.text);
        arg.nodes.push_back(std::move(node));
    }

    const json& jedges = require_field(j, "edges", where);
    if (!jedges.is_array()) throw Error("corpus schema violation at " + where + ": 'edges' must be an array");
    for (const auto& je : jedges) {
        if (!je.is_object()) throw Error("corpus schema violation at " + where + ": edge is not an object");
        reject_unknown_keys(je, {"from", "to", "label"}, where + " edge");
        Edge e;
        e.from = require_field(je, "from", where + " edge").get<std::string>();
        e.to = require_field(je, "to", where + " edge").get<std::string>();
        e.label = relation_from_string(
            require_field(je, "label", where + " edge").get<std::string>());
        if (e.label == Relation::Neutral) {
            throw Error("corpus schema violation at " + where +
                        ": edge label must be 'support' or 'attack'");
        }
        arg.edges.push_back(std::move(e));
    }
    return arg;
}

}  // namespace

std::vector<Argument> parse_corpus_text(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw Error(std::string("corpus is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error("corpus schema violation: top level must be an object");
    reject_unknown_keys(doc, {"arguments"}, "top level");
    const json& jargs = require_field(doc, "arguments", "top level");
    if (!jargs.is_array()) throw Error("corpus schema violation: 'arguments' must be an array");

    std::vector<Argument> out;
    out.reserve(jargs.size());
    for (size_t i = 0; i < jargs.size(); ++i) {
        Argument arg = parse_argument(jargs[i], i);
        ValidationReport rep = validate_argument(arg);
        if (!rep.ok) {
            throw Error("argument '" + arg.id + "' failed validation: " + rep.violation);
        }
        out.push_back(std::move(arg));
    }
    return out;
}

std::vector<Argument> parse_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open corpus file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error("I/O error reading corpus file: " + path);
    return parse_corpus_text(buf.str());
}

std::string serialize_corpus(const std::vector<Argument>& args) {
    json jargs = json::array();
    for (const auto& arg : args) {
        json jnodes = json::array();
        for (const auto& n : arg.nodes) {
            jnodes.push_back({{"id", n.id}, {"text", n.text}});
        }
        json jedges = json::array();
        for (const auto& e : arg.edges) {
            jedges.push_back({{"from", e.from}, {"to", e.to}, {"label", to_string(e.label)}});
        }
        jargs.push_back({{"id", arg.id},
                         {"kind", to_string(arg.kind)},
                         {"nodes", jnodes},
                         {"edges", jedges}});
    }
    return json{{"arguments", jargs}}.dump(2) + "\n";
}

void write_corpus(const std::string& path, const std::vector<Argument>& args) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open file for writing: " + path);
    out << serialize_corpus(args);
    if (!out) throw Error("I/O error writing corpus file: " + path);
}

ValidationReport validate_argument(const Argument& arg, int node_cap) {
    ValidationReport rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.violation = msg;
        return rep;
    };

    std::unordered_map<std::string, int> index;
    for (size_t i = 0; i < arg.nodes.size(); ++i) {
        const auto& n = arg.nodes[i];
        if (n.id.empty()) return fail("node " + std::to_string(i) + " has an empty id");
        if (trimmed(n.text).empty()) return fail("node '" + n.id + "' has empty text");
        if (!index.emplace(n.id, static_cast<int>(i)).second) {
            return fail("duplicate node id '" + n.id + "'");
        }
    }

    int n = static_cast<int>(arg.nodes.size());
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<int> parent_count(n, 0);
    std::vector<std::vector<int>> children(n);  // parent -> child indices
    for (const auto& e : arg.edges) {
        auto fi = index.find(e.from);
        auto ti = index.find(e.to);
        if (fi == index.end()) return fail("edge references unknown node id '" + e.from + "'");
        if (ti == index.end()) return fail("edge references unknown node id '" + e.to + "'");
        if (e.from == e.to) return fail("self-loop on node '" + e.from + "'");
        if (!seen.emplace(e.from, e.to).second) {
            return fail("duplicate edge " + e.from + " -> " + e.to);
        }
        parent_count[fi->second]++;
        children[ti->second].push_back(fi->second);
    }

    // Both kinds are single-rooted trees; a chain additionally has at most
    // one child per node (a single directed path). Exactly-one-parent plus
    // a unique root forces |edges| = n-1, so the count is never checked
    // directly. An argument with no edges at all carries no gold structure
    // (a prediction input) and skips the structural checks.
    if (n > 0 && !arg.edges.empty()) {
        int root = -1;
        for (int i = 0; i < n; ++i) {
            if (parent_count[i] == 0) {
                if (root != -1) {
                    return fail("multiple roots: '" + arg.nodes[root].id + "' and '" +
                                arg.nodes[i].id + "'");
                }
                root = i;
            } else if (parent_count[i] > 1) {
                return fail("node '" + arg.nodes[i].id + "' has more than one parent");
            }
        }
        if (root == -1) return fail("no root: edge graph contains a cycle");

        // Reachability from the root along parent->child arcs covers every
        // node iff the graph is acyclic and connected.
        std::vector<char> seen_node(n, 0);
        std::queue<int> q;
        q.push(root);
        seen_node[root] = 1;
        int reached = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            ++reached;
            for (int c : children[u]) {
                if (!seen_node[c]) {
                    seen_node[c] = 1;
                    q.push(c);
                }
            }
        }
        if (reached != n) {
            for (int i = 0; i < n; ++i) {
                if (!seen_node[i]) {
                    return fail("cycle or disconnected component involving node '" +
                                arg.nodes[i].id + "'");
                }
            }
        }

        if (arg.kind == StructureKind::Chain) {
            for (int i = 0; i < n; ++i) {
                if (children[i].size() > 1) {
                    return fail("chain violation: node '" + arg.nodes[i].id +
                                "' has " + std::to_string(children[i].size()) + " children");
                }
            }
        }
    }

    if (node_cap > 0 && n > node_cap) rep.oversize = true;
    return rep;
}

namespace {

std::vector<LabeledPair> all_ordered_pairs(const Argument& arg,
                                           bool keep_attack) {
    std::unordered_map<std::string, Relation> gold;
    for (const auto& e : arg.edges) gold[e.from + "\x1f" + e.to] = e.label;

    std::vector<LabeledPair> out;
    out.reserve(arg.nodes.size() * (arg.nodes.size() - 1));
    for (const auto& a : arg.nodes) {
        for (const auto& b : arg.nodes) {
            if (a.id == b.id) continue;
            LabeledPair p{arg.id, a.id, b.id, Relation::Neutral};
            auto it = gold.find(a.id + "\x1f" + b.id);
            if (it != gold.end()) {
                p.label = keep_attack ? it->second : Relation::Support;
            }
            out.push_back(std::move(p));
        }
    }
    return out;
}

}  // namespace

std::vector<LabeledPair> generate_pairs_type1(const Argument& arg) {
    if (arg.has_attack_edges()) {
        throw Error("argument '" + arg.id +
                    "' contains Attack edges; use generate_pairs_multiclass");
    }
    return all_ordered_pairs(arg, false);
}

std::vector<LabeledPair> generate_pairs_type2(const Argument& arg) {
    if (arg.has_attack_edges()) {
        throw Error("argument '" + arg.id +
                    "' contains Attack edges; use generate_pairs_multiclass");
    }
    std::vector<LabeledPair> out;
    out.reserve(arg.edges.size() * 2);
    for (const auto& e : arg.edges) {
        out.push_back({arg.id, e.from, e.to, Relation::Support});
    }
    for (const auto& e : arg.edges) {
        out.push_back({arg.id, e.to, e.from, Relation::Neutral});
    }
    return out;
}

std::vector<LabeledPair> generate_pairs_multiclass(const Argument& arg) {
    return all_ordered_pairs(arg, true);
}

FoldAssignment split_folds(const std::vector<Argument>& corpus, int k,
                           uint64_t seed) {
    if (k <= 0) throw Error("fold count must be positive");
    if (static_cast<size_t>(k) > corpus.size()) {
        throw Error("fold count " + std::to_string(k) + " exceeds corpus size " +
                    std::to_string(corpus.size()));
    }
    std::vector<std::string> ids;
    ids.reserve(corpus.size());
    for (const auto& a : corpus) ids.push_back(a.id);

    Rng rng(seed);
    rng.shuffle(ids);

    FoldAssignment fa;
    fa.k = k;
    for (size_t i = 0; i < ids.size(); ++i) {
        fa.assignment[ids[i]] = static_cast<int>(i % static_cast<size_t>(k));
    }
    return fa;
}

}  // namespace argstruct
