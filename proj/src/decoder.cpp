#include "argstruct/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace argstruct {

EdgeWeights EdgeWeights::from_support(const ScoreMatrix& scores) {
    if (scores.mode != ScoreMode::Binary) {
        throw Error("from_support needs a binary-mode score matrix");
    }
    EdgeWeights ew;
    ew.argument_id = scores.argument_id;
    ew.node_ids = scores.node_ids;
    ew.w = scores.support;
    return ew;
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// One decoded structure as a parent function; parent[i] == -1 marks the
// root. Totals are always recomputed in child-index order so equal edge
// sets compare bit-equal no matter which decoder produced them.
struct Candidate {
    double total = kNegInf;
    std::vector<int> parent;
    int root = -1;

    bool valid() const { return root >= 0; }
};

double canonical_total(const EdgeWeights& w, const std::vector<int>& parent) {
    double total = 0.0;
    for (size_t i = 0; i < parent.size(); ++i) {
        if (parent[i] >= 0) total += w.at(i, static_cast<size_t>(parent[i]));
    }
    return total;
}

// Lexicographic order on the child-sorted edge lists; the deterministic
// tie-break among equal-total structures.
bool edge_list_less(const std::vector<int>& pa, const std::vector<int>& pb) {
    std::vector<std::pair<int, int>> ea, eb;
    ea.reserve(pa.size());
    eb.reserve(pb.size());
    for (size_t i = 0; i < pa.size(); ++i) {
        if (pa[i] >= 0) ea.push_back({static_cast<int>(i), pa[i]});
    }
    for (size_t i = 0; i < pb.size(); ++i) {
        if (pb[i] >= 0) eb.push_back({static_cast<int>(i), pb[i]});
    }
    return ea < eb;
}

bool better(const Candidate& a, const Candidate& b) {
    if (!b.valid()) return a.valid();
    if (!a.valid()) return false;
    if (a.total != b.total) return a.total > b.total;
    return edge_list_less(a.parent, b.parent);
}

void consider(const EdgeWeights& w, const std::vector<int>& parent, int root,
              Candidate& best) {
    double total = canonical_total(w, parent);
    if (best.valid()) {
        if (total < best.total) return;
        if (total == best.total && !edge_list_less(parent, best.parent)) return;
    }
    best.total = total;
    best.parent = parent;
    best.root = root;
}

PredictedStructure to_structure(const EdgeWeights& w, const Candidate& best,
                                StructureKind kind, const std::string& decoder) {
    if (!best.valid()) throw Error("decoder produced no structure");
    PredictedStructure ps;
    ps.argument_id = w.argument_id;
    ps.kind = kind;
    ps.total_score = best.total;
    ps.decoder = decoder;
    for (size_t i = 0; i < best.parent.size(); ++i) {
        if (best.parent[i] < 0) continue;
        ps.edges.push_back({w.node_ids[i],
                            w.node_ids[static_cast<size_t>(best.parent[i])],
                            std::nullopt});
    }
    check_structure(ps, w.node_ids);
    return ps;
}

// ---- exhaustive level-set enumeration ----

struct ExhaustiveCtx {
    const EdgeWeights& w;
    std::vector<int> parent;
    Candidate best;
    int root;
};

// Places every subset of `remaining` as the next level; each placed node
// attaches to its best-scoring parent in `last` (smallest index on ties).
void exhaustive_recurse(ExhaustiveCtx& ctx, uint32_t remaining, uint32_t last) {
    if (remaining == 0) {
        consider(ctx.w, ctx.parent, ctx.root, ctx.best);
        return;
    }
    for (uint32_t sub = remaining;; sub = (sub - 1) & remaining) {
        if (sub != 0) {
            for (uint32_t bits = sub; bits;) {
                int v = std::countr_zero(bits);
                bits &= bits - 1;
                int best_p = -1;
                double best_w = kNegInf;
                for (uint32_t pb = last; pb;) {
                    int p = std::countr_zero(pb);
                    pb &= pb - 1;
                    double cand = ctx.w.at(static_cast<size_t>(v), static_cast<size_t>(p));
                    if (cand > best_w) {
                        best_w = cand;
                        best_p = p;
                    }
                }
                ctx.parent[static_cast<size_t>(v)] = best_p;
            }
            exhaustive_recurse(ctx, remaining & ~sub, sub);
        }
        if (sub == 0) break;
    }
}

Candidate exhaustive_for_root(const EdgeWeights& w, int root) {
    ExhaustiveCtx ctx{w, std::vector<int>(w.n(), -1), Candidate{}, root};
    uint32_t all = (w.n() >= 32) ? 0 : ((1u << w.n()) - 1);
    exhaustive_recurse(ctx, all & ~(1u << root), 1u << root);
    return ctx.best;
}

void check_decodable(const EdgeWeights& w, int max_nodes, const char* what) {
    if (w.n() < 2) {
        throw Error(std::string(what) + ": argument '" + w.argument_id +
                    "' has fewer than 2 nodes");
    }
    if (max_nodes >= 0 && static_cast<int>(w.n()) > max_nodes) {
        throw Error(std::string(what) + ": argument '" + w.argument_id + "' has " +
                    std::to_string(w.n()) + " nodes, above the cap of " +
                    std::to_string(max_nodes));
    }
}

PredictedStructure exhaustive_impl(const EdgeWeights& w, int max_nodes, bool parallel) {
    check_decodable(w, max_nodes, "best_tree_exhaustive");
    if (w.n() > 31) {
        throw Error("best_tree_exhaustive: the subset enumeration is limited to 31 nodes");
    }
    int n = static_cast<int>(w.n());
    std::vector<Candidate> per_root(static_cast<size_t>(n));
#ifdef _OPENMP
    #pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int root = 0; root < n; ++root) {
        per_root[static_cast<size_t>(root)] = exhaustive_for_root(w, root);
    }
    Candidate best;
    for (const auto& c : per_root) {
        if (better(c, best)) best = c;
    }
    return to_structure(w, best, StructureKind::Tree, "exhaustive");
}

// ---- Chu-Liu/Edmonds ----

struct CleEdge {
    double w = kNegInf;
    bool present = false;
};

// Maximum spanning arborescence rooted at rr; mat[u][v] weighs the edge
// making u the parent of v. Returns the parent function in the index
// space of `mat`.
std::vector<int> cle_core(std::vector<std::vector<CleEdge>> mat, int rr) {
    int m = static_cast<int>(mat.size());
    std::vector<int> in_parent(static_cast<size_t>(m), -1);
    for (int v = 0; v < m; ++v) {
        if (v == rr) continue;
        double best = kNegInf;
        int arg = -1;
        for (int u = 0; u < m; ++u) {
            if (u == v || !mat[static_cast<size_t>(u)][static_cast<size_t>(v)].present) continue;
            double cand = mat[static_cast<size_t>(u)][static_cast<size_t>(v)].w;
            if (cand > best) {
                best = cand;
                arg = u;
            }
        }
        if (arg < 0) throw Error("arborescence: node without incoming edges");
        in_parent[static_cast<size_t>(v)] = arg;
    }

    // cycle detection over the in-edge graph
    std::vector<int> color(static_cast<size_t>(m), 0);  // 0 unseen, 1 active, 2 done
    std::vector<int> cycle;
    for (int v = 0; v < m && cycle.empty(); ++v) {
        if (color[static_cast<size_t>(v)]) continue;
        int x = v;
        std::vector<int> path;
        while (x != rr && color[static_cast<size_t>(x)] == 0) {
            color[static_cast<size_t>(x)] = 1;
            path.push_back(x);
            x = in_parent[static_cast<size_t>(x)];
        }
        if (x != rr && color[static_cast<size_t>(x)] == 1) {
            // walked into the active path: extract the cycle
            auto it = std::find(path.begin(), path.end(), x);
            cycle.assign(it, path.end());
        }
        for (int p : path) color[static_cast<size_t>(p)] = 2;
    }

    if (cycle.empty()) return in_parent;

    std::vector<char> in_cycle(static_cast<size_t>(m), 0);
    for (int v : cycle) in_cycle[static_cast<size_t>(v)] = 1;

    // contracted index space: non-cycle nodes in ascending order, the
    // cycle as the last node
    std::vector<int> old_of;
    std::vector<int> new_of(static_cast<size_t>(m), -1);
    for (int v = 0; v < m; ++v) {
        if (!in_cycle[static_cast<size_t>(v)]) {
            new_of[static_cast<size_t>(v)] = static_cast<int>(old_of.size());
            old_of.push_back(v);
        }
    }
    int c = static_cast<int>(old_of.size());
    int m2 = c + 1;

    std::vector<std::vector<CleEdge>> mat2(
        static_cast<size_t>(m2), std::vector<CleEdge>(static_cast<size_t>(m2)));
    std::vector<int> enter_via(static_cast<size_t>(m), -1);   // u -> best cycle node
    std::vector<int> leave_via(static_cast<size_t>(m), -1);   // x -> best cycle node
    for (int u = 0; u < m; ++u) {
        if (in_cycle[static_cast<size_t>(u)]) continue;
        int nu = new_of[static_cast<size_t>(u)];
        for (int x = 0; x < m; ++x) {
            if (in_cycle[static_cast<size_t>(x)] || x == u) continue;
            mat2[static_cast<size_t>(nu)][static_cast<size_t>(new_of[static_cast<size_t>(x)])] =
                mat[static_cast<size_t>(u)][static_cast<size_t>(x)];
        }
        // u -> cycle: reduced by the weight of the in-cycle edge it displaces
        double best = kNegInf;
        int arg = -1;
        for (int v : cycle) {
            const CleEdge& e = mat[static_cast<size_t>(u)][static_cast<size_t>(v)];
            if (!e.present) continue;
            double reduced =
                e.w - mat[static_cast<size_t>(in_parent[static_cast<size_t>(v)])]
                         [static_cast<size_t>(v)].w;
            if (reduced > best) {
                best = reduced;
                arg = v;
            }
        }
        if (arg >= 0) {
            mat2[static_cast<size_t>(nu)][static_cast<size_t>(c)] = {best, true};
            enter_via[static_cast<size_t>(u)] = arg;
        }
        // cycle -> x
        best = kNegInf;
        arg = -1;
        for (int v : cycle) {
            const CleEdge& e = mat[static_cast<size_t>(v)][static_cast<size_t>(u)];
            if (!e.present) continue;
            if (e.w > best) {
                best = e.w;
                arg = v;
            }
        }
        if (arg >= 0) {
            mat2[static_cast<size_t>(c)][static_cast<size_t>(nu)] = {best, true};
            leave_via[static_cast<size_t>(u)] = arg;
        }
    }

    int rr2 = new_of[static_cast<size_t>(rr)];
    std::vector<int> sub = cle_core(std::move(mat2), rr2);

    // expand back into the current index space
    std::vector<int> parent(static_cast<size_t>(m), -1);
    int entered = -1;  // cycle node receiving the external in-edge
    for (int nv = 0; nv < m2; ++nv) {
        int p2 = sub[static_cast<size_t>(nv)];
        if (p2 < 0) continue;
        if (nv == c) {
            int u = old_of[static_cast<size_t>(p2)];
            entered = enter_via[static_cast<size_t>(u)];
            parent[static_cast<size_t>(entered)] = u;
        } else {
            int x = old_of[static_cast<size_t>(nv)];
            parent[static_cast<size_t>(x)] =
                p2 == c ? leave_via[static_cast<size_t>(x)] : old_of[static_cast<size_t>(p2)];
        }
    }
    for (int v : cycle) {
        if (v != entered) parent[static_cast<size_t>(v)] = in_parent[static_cast<size_t>(v)];
    }
    return parent;
}

Candidate arborescence_for_root(const EdgeWeights& w, int root) {
    int n = static_cast<int>(w.n());
    // mat[u][v]: u is the parent of v, i.e. candidate edge (child v -> parent u)
    std::vector<std::vector<CleEdge>> mat(
        static_cast<size_t>(n), std::vector<CleEdge>(static_cast<size_t>(n)));
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            mat[static_cast<size_t>(u)][static_cast<size_t>(v)] = {
                w.at(static_cast<size_t>(v), static_cast<size_t>(u)), true};
        }
    }
    Candidate cand;
    cand.parent = cle_core(std::move(mat), root);
    cand.root = root;
    cand.total = canonical_total(w, cand.parent);
    return cand;
}

PredictedStructure arborescence_impl(const EdgeWeights& w, bool parallel) {
    check_decodable(w, -1, "best_arborescence");
    int n =  static_cast<int>(w.n());
    std::vector<Candidate> per_root(static_cast<size_t>(n));
    std::exception_ptr failure;
#ifdef _OPENMP
    #pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int root = 0; root < n; ++root) {
        try {
            per_root[static_cast<size_t>(root)] = arborescence_for_root(w, root);
        } catch (...) {
#ifdef _OPENMP
            #pragma omp critical
#endif
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    Candidate best;
    for (const auto& c : per_root) {
        if (better(c, best)) best = c;
    }
    return to_structure(w, best, StructureKind::Tree, "arborescence");
}

// ---- chains ----

Candidate chain_for_first(const EdgeWeights& w, int first) {
    int n = static_cast<int>(w.n());
    std::vector<int> rest;
    for (int i = 0; i < n; ++i) {
        if (i != first) rest.push_back(i);
    }
    Candidate best;
    std::vector<int> parent(static_cast<size_t>(n), -1);
    do {
        int prev = first;
        for (int nxt : rest) {
            parent[static_cast<size_t>(prev)] = nxt;
            prev = nxt;
        }
        parent[static_cast<size_t>(prev)] = -1;  // chain head is the root
        consider(w, parent, prev, best);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

PredictedStructure chain_impl(const EdgeWeights& w, int max_nodes, bool parallel) {
    check_decodable(w, max_nodes, "best_chain");
    int n = static_cast<int>(w.n());
    std::vector<Candidate> per_first(static_cast<size_t>(n));
#ifdef _OPENMP
    #pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (int first = 0; first < n; ++first) {
        per_first[static_cast<size_t>(first)] = chain_for_first(w, first);
    }
    Candidate best;
    for (const auto& c : per_first) {
        if (better(c, best)) best = c;
    }
    return to_structure(w, best, StructureKind::Chain, "chain");
}

}  // namespace

PredictedStructure best_tree_exhaustive(const EdgeWeights& w, int max_nodes) {
    return exhaustive_impl(w, max_nodes, true);
}
PredictedStructure best_tree_exhaustive_serial(const EdgeWeights& w, int max_nodes) {
    return exhaustive_impl(w, max_nodes, false);
}

PredictedStructure best_arborescence(const EdgeWeights& w) {
    return arborescence_impl(w, true);
}
PredictedStructure best_arborescence_serial(const EdgeWeights& w) {
    return arborescence_impl(w, false);
}

PredictedStructure best_chain(const EdgeWeights& w, int max_nodes) {
    return chain_impl(w, max_nodes, true);
}
PredictedStructure best_chain_serial(const EdgeWeights& w, int max_nodes) {
    return chain_impl(w, max_nodes, false);
}

PredictedStructure decode_two_step(const ScoreMatrix& detection,
                                   const AnyModel& resolver,
                                   const FeatureLayout& resolver_layout,
                                   const FeatureArtifacts& resolver_artifacts,
                                   const Argument& arg, StructureKind kind,
                                   int tree_cap, int chain_cap) {
    EdgeWeights w = EdgeWeights::from_support(detection);
    PredictedStructure ps = kind == StructureKind::Chain
                                ? best_chain(w, chain_cap)
                                : best_tree_exhaustive(w, tree_cap);
    ps.decoder = "two-step";

    const auto& classes = model_classes(resolver);
    for (auto& e : ps.edges) {
        LabeledPair pair{arg.id, e.child, e.parent, Relation::Neutral};
        FeatureVector x = extract(pair, arg, resolver_layout, resolver_artifacts);
        auto scores = model_raw_scores(resolver, x);
        e.label = relation_from_string(classes[static_cast<size_t>(predicted_class(scores))]);
    }
    return ps;
}

PredictedStructure decode_single_step(const ScoreMatrix& multiclass,
                                      StructureKind kind, int tree_cap,
                                      int chain_cap) {
    if (multiclass.mode != ScoreMode::Multiclass) {
        throw Error("decode_single_step needs a multiclass score matrix");
    }
    size_t n = multiclass.size();
    EdgeWeights w;
    w.argument_id = multiclass.argument_id;
    w.node_ids = multiclass.node_ids;
    w.w.assign(n * n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            size_t at = multiclass.idx(i, j);
            double s = multiclass.conf_support[at] - multiclass.conf_neutral[at];
            double a = multiclass.conf_attack[at] - multiclass.conf_neutral[at];
            w.at(i, j) = std::max(s, a);
        }
    }
    PredictedStructure ps = kind == StructureKind::Chain
                                ? best_chain(w, chain_cap)
                                : best_tree_exhaustive(w, tree_cap);
    ps.decoder = "single-step";

    // label each chosen edge by the winning relation (Support on ties)
    std::vector<size_t> index_of(n);
    for (size_t i = 0; i < n; ++i) index_of[i] = i;
    auto node_index = [&](const std::string& id) {
        for (size_t i = 0; i < n; ++i) {
            if (multiclass.node_ids[i] == id) return i;
        }
        throw Error("unknown node id in decoded structure: " + id);
    };
    for (auto& e : ps.edges) {
        size_t at = multiclass.idx(node_index(e.child), node_index(e.parent));
        e.label = multiclass.conf_support[at] >= multiclass.conf_attack[at]
                      ? Relation::Support
                      : Relation::Attack;
    }
    return ps;
}

void check_structure(const PredictedStructure& ps,
                     const std::vector<std::string>& node_ids) {
    Argument shim;
    shim.id = ps.argument_id;
    shim.kind = ps.kind;
    for (const auto& id : node_ids) shim.nodes.push_back({id, "x", {}});
    for (const auto& e : ps.edges) {
        shim.edges.push_back({e.child, e.parent, e.label.value_or(Relation::Support)});
    }
    ValidationReport rep = validate_argument(shim, 0);
    if (!rep.ok) {
        throw Error("decoded structure for '" + ps.argument_id +
                    "' violates invariants: " + rep.violation);
    }
}

}  // namespace argstruct
