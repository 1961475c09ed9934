#include "argstruct/experiment.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "argstruct/rng.hpp"

namespace argstruct {

using nlohmann::json;

Framework framework_from_string(const std::string& s) {
    if (s == "type1") return Framework::Type1;
    if (s == "type2") return Framework::Type2;
    if (s == "multiclass") return Framework::Multiclass;
    if (s == "two-step" || s == "twostep") return Framework::TwoStep;
    throw Error("unknown framework '" + s + "' (type1, type2, multiclass, two-step)");
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "svm") return ModelKind::Svm;
    if (s == "mlp") return ModelKind::Mlp;
    throw Error("unknown model '" + s + "' (svm, mlp)");
}

DecoderKind decoder_kind_from_string(const std::string& s) {
    if (s == "exhaustive") return DecoderKind::Exhaustive;
    if (s == "arborescence") return DecoderKind::Arborescence;
    if (s == "chain") return DecoderKind::Chain;
    throw Error("unknown decoder '" + s + "' (exhaustive, arborescence, chain)");
}

const char* to_string(Framework f) {
    switch (f) {
        case Framework::Type1: return "type1";
        case Framework::Type2: return "type2";
        case Framework::Multiclass: return "multiclass";
        case Framework::TwoStep: return "two-step";
    }
    return "?";
}

const char* to_string(ModelKind m) { return m == ModelKind::Svm ? "svm" : "mlp"; }

const char* to_string(DecoderKind d) {
    switch (d) {
        case DecoderKind::Exhaustive: return "exhaustive";
        case DecoderKind::Arborescence: return "arborescence";
        case DecoderKind::Chain: return "chain";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (features.empty()) throw Error("feature mask must enable at least one group");
    parse_feature_mask(features);
    if (tree_cap < 2 || chain_cap < 2) throw Error("decoder caps must be at least 2");
    if (max_nodes < 2) throw Error("max-nodes must be at least 2");
    if (k < 2) throw Error("cross-validation needs k >= 2");
    if (ngram_threshold <= 1.0) throw Error("ngram threshold must exceed 1");
    bool wordvec = std::find(features.begin(), features.end(), "wordvec") != features.end();
    if (wordvec && embeddings_path.empty()) {
        throw Error("wordvec feature group enabled but no embeddings path given");
    }
}

const std::vector<std::string>& task_classes(TrainingTask task) {
    static const std::vector<std::string> binary = {"support", "neutral"};
    static const std::vector<std::string> detection = {"edge", "neutral"};
    static const std::vector<std::string> resolver = {"support", "attack"};
    static const std::vector<std::string> single = {"support", "attack", "neutral"};
    switch (task) {
        case TrainingTask::Binary: return binary;
        case TrainingTask::Detection: return detection;
        case TrainingTask::Resolver: return resolver;
        case TrainingTask::SingleStep: return single;
    }
    return binary;
}

std::vector<FeatureGroup> parse_feature_mask(const std::vector<std::string>& names) {
    if (names.empty()) throw Error("feature mask must enable at least one group");
    std::vector<FeatureGroup> out;
    for (const auto& n : names) out.push_back(feature_group_from_string(n));
    return out;
}

FeatureArtifacts load_artifacts(const ExperimentConfig& cfg) {
    FeatureArtifacts artifacts;
    if (!cfg.embeddings_path.empty()) {
        artifacts.embeddings =
            std::make_shared<EmbeddingTable>(load_embeddings(cfg.embeddings_path));
    }
    if (!cfg.negation_lexicon_path.empty()) {
        artifacts.negation = load_lexicon(cfg.negation_lexicon_path);
    }
    if (!cfg.antonym_lexicon_path.empty()) {
        artifacts.antonyms = load_antonym_lexicon(cfg.antonym_lexicon_path);
    }
    artifacts.annotator = make_annotator(cfg.annotator_mode, cfg.annotator_endpoint,
                                         cfg.entity_cache_path);
    return artifacts;
}

std::vector<LabeledPair> task_pairs(const Argument& arg, const ExperimentConfig& cfg,
                                    TrainingTask task) {
    switch (task) {
        case TrainingTask::Binary:
            return cfg.framework == Framework::Type2 ? generate_pairs_type2(arg)
                                                     : generate_pairs_type1(arg);
        case TrainingTask::SingleStep:
            return generate_pairs_multiclass(arg);
        case TrainingTask::Resolver: {
            std::vector<LabeledPair> out;
            for (const auto& e : arg.edges) {
                out.push_back({arg.id, e.from, e.to, e.label});
            }
            return out;
        }
        case TrainingTask::Detection: {
            if (cfg.detection_framework == Framework::Type2) {
                std::vector<LabeledPair> out;
                for (const auto& e : arg.edges) {
                    out.push_back({arg.id, e.from, e.to, Relation::Support});
                }
                for (const auto& e : arg.edges) {
                    out.push_back({arg.id, e.to, e.from, Relation::Neutral});
                }
                return out;
            }
            // type-1: all ordered pairs, gold edges of either label positive
            auto pairs = generate_pairs_multiclass(arg);
            for (auto& p : pairs) {
                if (p.label == Relation::Attack) p.label = Relation::Support;
            }
            return pairs;
        }
    }
    throw Error("unreachable");
}

int task_label(const LabeledPair& pair, TrainingTask task) {
    switch (task) {
        case TrainingTask::Binary:
        case TrainingTask::Detection:
            // positive class (support / edge) is index 0
            return pair.label == Relation::Neutral ? 1 : 0;
        case TrainingTask::Resolver:
            return pair.label == Relation::Attack ? 1 : 0;
        case TrainingTask::SingleStep:
            switch (pair.label) {
                case Relation::Support: return 0;
                case Relation::Attack: return 1;
                case Relation::Neutral: return 2;
            }
    }
    throw Error("unreachable");
}

namespace {

std::vector<std::pair<TokenSequence, TokenSequence>> gold_edge_token_pairs(
    const std::vector<Argument>& args) {
    std::vector<std::pair<TokenSequence, TokenSequence>> out;
    for (const auto& arg : args) {
        for (const auto& e : arg.edges) {
            const auto* text = arg.find_node(e.from);
            const auto* hyp = arg.find_node(e.to);
            out.push_back({text->tokens, hyp->tokens});
        }
    }
    return out;
}

}  // namespace

TrainedPipeline train_pipeline(const std::vector<Argument>& training_args,
                               const ExperimentConfig& cfg, TrainingTask task,
                               uint64_t seed,
                               const FeatureArtifacts& base_artifacts) {
    if (training_args.empty()) throw Error("no training arguments");
    auto groups = parse_feature_mask(cfg.features);

    TrainedPipeline tp;
    tp.artifacts = base_artifacts;
    bool wants_ngrams =
        std::find(groups.begin(), groups.end(), FeatureGroup::Ngram) != groups.end();
    if (wants_ngrams) {
        tp.artifacts.vocab =
            fit_ngram_vocab(gold_edge_token_pairs(training_args), cfg.ngram_threshold);
    }
    tp.layout = make_layout(groups, tp.artifacts);

    std::vector<LabeledPair> pairs;
    std::vector<int> labels;
    for (const auto& arg : training_args) {
        for (auto& p : task_pairs(arg, cfg, task)) {
            labels.push_back(task_label(p, task));
            pairs.push_back(std::move(p));
        }
    }

    Dataset data;
    data.rows = extract_batch(pairs, training_args, tp.layout, tp.artifacts, cfg.parallel);
    data.labels = std::move(labels);
    data.classes = task_classes(task);
    data.layout_fingerprint = tp.layout.fingerprint;
    tp.class_counts = data.class_counts();

    if (cfg.model == ModelKind::Svm) {
        SvmConfig sc = cfg.svm;
        sc.seed = seed;
        tp.model = train_linear_svm(data, sc);
    } else {
        MlpConfig mc = cfg.mlp;
        mc.seed = seed;
        tp.model = train_mlp(data, mc);
    }
    return tp;
}

namespace {

struct EligibleCorpus {
    std::vector<Argument> args;
    int skipped = 0;
};

EligibleCorpus filter_corpus(const std::vector<Argument>& corpus,
                             const ExperimentConfig& cfg) {
    EligibleCorpus out;
    bool support_only =
        cfg.framework == Framework::Type1 || cfg.framework == Framework::Type2;
    for (const auto& arg : corpus) {
        ValidationReport rep = validate_argument(arg, cfg.max_nodes);
        if (!rep.ok) {
            std::cerr << "note: skipping argument '" << arg.id << "': " << rep.violation
                      << "\n";
            out.skipped++;
            continue;
        }
        if (rep.oversize) {
            std::cerr << "note: skipping argument '" << arg.id << "': more than "
                      << cfg.max_nodes << " nodes\n";
            out.skipped++;
            continue;
        }
        if (arg.nodes.size() < 2) {
            std::cerr << "note: skipping argument '" << arg.id << "': fewer than 2 nodes\n";
            out.skipped++;
            continue;
        }
        if (arg.edges.empty()) {
            std::cerr << "note: skipping argument '" << arg.id << "': no gold edges\n";
            out.skipped++;
            continue;
        }
        if (support_only && arg.has_attack_edges()) {
            std::cerr << "note: skipping argument '" << arg.id
                      << "': contains attack edges\n";
            out.skipped++;
            continue;
        }
        out.args.push_back(arg);
    }
    return out;
}

PredictedStructure decode_binary(const ScoreMatrix& sm, const ExperimentConfig& cfg) {
    EdgeWeights w = EdgeWeights::from_support(sm);
    switch (cfg.decoder) {
        case DecoderKind::Exhaustive: return best_tree_exhaustive(w, cfg.tree_cap);
        case DecoderKind::Arborescence: return best_arborescence(w);
        case DecoderKind::Chain: return best_chain(w, cfg.chain_cap);
    }
    throw Error("unreachable");
}

int binary_prediction(const ScoreMatrix& sm, size_t text, size_t hyp) {
    return sm.raw[sm.idx(text, hyp)] > sm.positive_threshold ? 0 : 1;
}

// per-task pair predictions for one test argument, read off the score
// matrix where possible
void collect_pair_predictions(const Argument& arg, const ExperimentConfig& cfg,
                              TrainingTask task, const ScoreMatrix& sm,
                              const TrainedPipeline* resolver,
                              std::vector<PairPrediction>& sink) {
    auto index_of = [&](const std::string& id) {
        return static_cast<size_t>(arg.node_index(id));
    };
    for (const auto& pair : task_pairs(arg, cfg, task)) {
        size_t ti = index_of(pair.text_node), hi = index_of(pair.hypothesis_node);
        PairPrediction pp;
        pp.gold = task_label(pair, task);
        switch (task) {
            case TrainingTask::Binary:
            case TrainingTask::Detection:
                pp.predicted = binary_prediction(sm, ti, hi);
                pp.support_score = sm.support[sm.idx(ti, hi)];
                break;
            case TrainingTask::SingleStep: {
                size_t at = sm.idx(ti, hi);
                double s = sm.conf_support[at], a = sm.conf_attack[at],
                       n = sm.conf_neutral[at];
                pp.predicted = s >= a ? (s >= n ? 0 : 2) : (a >= n ? 1 : 2);
                pp.support_score = s;
                break;
            }
            case TrainingTask::Resolver: {
                FeatureVector x =
                    extract(pair, arg, resolver->layout, resolver->artifacts);
                auto scores = model_raw_scores(resolver->model, x);
                pp.predicted = predicted_class(scores);
                break;
            }
        }
        sink.push_back(pp);
    }
}

// two-step combined 3-class prediction over the multiclass pair set
void collect_two_step_predictions(const Argument& arg, const ScoreMatrix& detection,
                                  const TrainedPipeline& resolver,
                                  std::vector<PairPrediction>& sink) {
    auto index_of = [&](const std::string& id) {
        return static_cast<size_t>(arg.node_index(id));
    };
    for (const auto& pair : generate_pairs_multiclass(arg)) {
        size_t ti = index_of(pair.text_node), hi = index_of(pair.hypothesis_node);
        PairPrediction pp;
        pp.gold = task_label(pair, TrainingTask::SingleStep);
        if (binary_prediction(detection, ti, hi) == 1) {
            pp.predicted = 2;  // neutral
        } else {
            FeatureVector x = extract(pair, arg, resolver.layout, resolver.artifacts);
            auto scores = model_raw_scores(resolver.model, x);
            pp.predicted = predicted_class(scores) == 0 ? 0 : 1;
        }
        pp.support_score = detection.support[detection.idx(ti, hi)];
        sink.push_back(pp);
    }
}

StructureKind decode_kind(const ExperimentConfig& cfg) {
    return cfg.decoder == DecoderKind::Chain ? StructureKind::Chain
                                             : StructureKind::Tree;
}

// labels the edges of an already-decoded structure with the resolver
void resolve_labels(PredictedStructure& ps, const Argument& arg,
                    const TrainedPipeline& resolver) {
    const auto& classes = model_classes(resolver.model);
    for (auto& e : ps.edges) {
        LabeledPair pair{arg.id, e.child, e.parent, Relation::Neutral};
        FeatureVector x = extract(pair, arg, resolver.layout, resolver.artifacts);
        auto scores = model_raw_scores(resolver.model, x);
        e.label =
            relation_from_string(classes[static_cast<size_t>(predicted_class(scores))]);
    }
}

void precompute_entities(const std::vector<Argument>& corpus,
                         const FeatureArtifacts& artifacts) {
    if (!artifacts.annotator) return;
    for (const auto& arg : corpus) {
        for (const auto& node : arg.nodes) artifacts.annotator->annotate(node.text);
    }
    if (auto* caching = dynamic_cast<CachingAnnotator*>(artifacts.annotator.get())) {
        caching->save_cache();
    }
}

}  // namespace

CrossValResult run_cross_validation(const std::vector<Argument>& corpus,
                                    const ExperimentConfig& cfg) {
    cfg.validate();
#ifdef _OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif

    EligibleCorpus eligible = filter_corpus(corpus, cfg);
    if (static_cast<int>(eligible.args.size()) < cfg.k) {
        throw Error("fold count " + std::to_string(cfg.k) + " exceeds the " +
                    std::to_string(eligible.args.size()) + " usable arguments");
    }

    FeatureArtifacts base = load_artifacts(cfg);
    bool wants_entities = std::find(cfg.features.begin(), cfg.features.end(),
                                    "entity") != cfg.features.end();
    if (wants_entities) precompute_entities(eligible.args, base);

    FoldAssignment folds = split_folds(eligible.args, cfg.k, cfg.seed);

    CrossValResult result;
    result.arguments_used = static_cast<int>(eligible.args.size());
    result.arguments_skipped = eligible.skipped;

    std::map<std::string, std::vector<PairPrediction>> pair_sink;
    std::map<std::string, SimReport> sims;

    for (int fold = 0; fold < cfg.k; ++fold) {
        std::vector<Argument> train_args, test_args;
        for (const auto& arg : eligible.args) {
            (folds.assignment.at(arg.id) == fold ? test_args : train_args).push_back(arg);
        }
        if (train_args.empty() || test_args.empty()) continue;
        uint64_t fold_seed = Rng::mix(cfg.seed, 1000 + static_cast<uint64_t>(fold));

        switch (cfg.framework) {
            case Framework::Type1:
            case Framework::Type2: {
                TrainedPipeline tp =
                    train_pipeline(train_args, cfg, TrainingTask::Binary, fold_seed, base);
                for (const auto& arg : test_args) {
                    ScoreMatrix sm = score_argument(tp.model, arg, tp.layout,
                                                    tp.artifacts, ScoreMode::Binary,
                                                    cfg.parallel);
                    PredictedStructure ps = decode_binary(sm, cfg);
                    sims["sim"].add(static_cast<int>(arg.nodes.size()),
                                    sim_score(ps, arg));
                    collect_pair_predictions(arg, cfg, TrainingTask::Binary, sm, nullptr,
                                             pair_sink["classifier"]);
                }
                break;
            }
            case Framework::Multiclass: {
                TrainedPipeline tp = train_pipeline(train_args, cfg,
                                                    TrainingTask::SingleStep, fold_seed,
                                                    base);
                for (const auto& arg : test_args) {
                    ScoreMatrix sm = score_argument(tp.model, arg, tp.layout,
                                                    tp.artifacts, ScoreMode::Multiclass,
                                                    cfg.parallel);
                    PredictedStructure ps = decode_single_step(sm, decode_kind(cfg),
                                                               cfg.tree_cap,
                                                               cfg.chain_cap);
                    int nn = static_cast<int>(arg.nodes.size());
                    sims["s_s_1"].add(nn, sim_score(ps, arg));
                    sims["s_s"].add(nn, labeled_sim_score(ps, arg));
                    collect_pair_predictions(arg, cfg, TrainingTask::SingleStep, sm,
                                             nullptr, pair_sink["single_step"]);
                }
                break;
            }
            case Framework::TwoStep: {
                TrainedPipeline detection = train_pipeline(
                    train_args, cfg, TrainingTask::Detection, fold_seed, base);
                TrainedPipeline resolver = train_pipeline(
                    train_args, cfg, TrainingTask::Resolver,
                    Rng::mix(cfg.seed, 5000 + static_cast<uint64_t>(fold)), base);
                for (const auto& arg : test_args) {
                    ScoreMatrix sm = score_argument(detection.model, arg,
                                                    detection.layout,
                                                    detection.artifacts,
                                                    ScoreMode::Binary, cfg.parallel);
                    PredictedStructure unlabeled = decode_binary(sm, cfg);
                    PredictedStructure labeled = unlabeled;
                    resolve_labels(labeled, arg, resolver);
                    int nn = static_cast<int>(arg.nodes.size());
                    sims["t_s_1"].add(nn, sim_score(unlabeled, arg));
                    sims["t_s"].add(nn, labeled_sim_score(labeled, arg));
                    collect_pair_predictions(arg, cfg, TrainingTask::Detection, sm,
                                             nullptr, pair_sink["detection"]);
                    collect_pair_predictions(arg, cfg, TrainingTask::Resolver, sm,
                                             &resolver, pair_sink["resolver"]);
                    collect_two_step_predictions(arg, sm, resolver,
                                                 pair_sink["two_step"]);
                }
                break;
            }
        }
    }

    for (auto& [name, report] : sims) {
        report.finalize();
        result.structures[name] = report;
    }
    for (auto& [name, preds] : pair_sink) {
        TrainingTask task = TrainingTask::Binary;
        if (name == "detection") task = TrainingTask::Detection;
        else if (name == "resolver") task = TrainingTask::Resolver;
        else if (name == "single_step" || name == "two_step") task = TrainingTask::SingleStep;
        result.classifiers[name] = classifier_metrics(preds, task_classes(task));
    }
    return result;
}

AblationReport run_ablation(const std::vector<Argument>& corpus,
                            const ExperimentConfig& cfg,
                            const std::vector<std::string>& groups,
                            bool with_wordvec) {
    cfg.validate();
    for (const auto& g : groups) {
        feature_group_from_string(g);
        if (std::find(cfg.features.begin(), cfg.features.end(), g) == cfg.features.end()) {
            throw Error("ablation group '" + g + "' is not in the configured feature mask");
        }
    }

    auto primary_sim = [](const CrossValResult& r) {
        if (r.structures.count("sim")) return r.structures.at("sim").mean_sim;
        if (r.structures.count("t_s_1")) return r.structures.at("t_s_1").mean_sim;
        return r.structures.at("s_s_1").mean_sim;
    };

    ExperimentConfig base_cfg = cfg;
    if (!with_wordvec) {
        base_cfg.features.erase(std::remove(base_cfg.features.begin(),
                                            base_cfg.features.end(), "wordvec"),
                                base_cfg.features.end());
        if (base_cfg.features.empty()) {
            throw Error("without-wordvec ablation leaves no feature groups");
        }
    }

    AblationReport report;
    report.with_wordvec = with_wordvec;
    report.baseline_sim = primary_sim(run_cross_validation(corpus, base_cfg));

    for (const auto& g : groups) {
        if (!with_wordvec && g == "wordvec") continue;
        ExperimentConfig ablated = base_cfg;
        ablated.features.erase(
            std::remove(ablated.features.begin(), ablated.features.end(), g),
            ablated.features.end());
        if (ablated.features.empty()) {
            throw Error("ablating group '" + g + "' leaves no feature groups");
        }
        AblationRow row;
        row.group = g;
        row.mean_sim = primary_sim(run_cross_validation(corpus, ablated));
        row.pct_decrease = report.baseline_sim != 0.0
                               ? 100.0 * (report.baseline_sim - row.mean_sim) /
                                     report.baseline_sim
                               : 0.0;
        report.rows.push_back(row);
    }
    return report;
}

namespace {

char class_initial(const std::string& name) { return name.empty() ? '?' : name[0]; }

json classifier_to_json(const ClassifierReport& rep) {
    json out;
    out["accuracy"] = rep.accuracy;
    out["pairs"] = rep.pairs;
    for (const auto& cls : rep.classes) {
        const auto& m = rep.per_class.at(cls);
        std::string suffix(1, class_initial(cls));
        if (m.confidence) out["confidence_" + suffix] = *m.confidence;
        if (m.recall) out["recall_" + suffix] = *m.recall;
        if (m.precision) out["precision_" + suffix] = *m.precision;
    }
    return out;
}

json sim_to_json(const SimReport& rep) {
    json by_nodes = json::object();
    for (const auto& [n, g] : rep.by_nodes) {
        by_nodes[std::to_string(n)] = {{"arguments", g.arguments},
                                       {"sim_score", g.mean_sim}};
    }
    return {{"sim_score_by_nodes", by_nodes},
            {"overall", {{"arguments", rep.arguments}, {"sim_score", rep.mean_sim}}}};
}

}  // namespace

std::string crossval_report_json(const CrossValResult& result,
                                 const ExperimentConfig& cfg) {
    json out;
    out["config"] = {{"framework", to_string(cfg.framework)},
                     {"model", to_string(cfg.model)},
                     {"decoder", to_string(cfg.decoder)},
                     {"features", cfg.features},
                     {"k", cfg.k},
                     {"seed", cfg.seed},
                     {"max_nodes", cfg.max_nodes},
                     {"ngram_threshold", cfg.ngram_threshold}};
    out["arguments_used"] = result.arguments_used;
    out["arguments_skipped"] = result.arguments_skipped;
    json classifiers = json::object();
    for (const auto& [name, rep] : result.classifiers) {
        classifiers[name] = classifier_to_json(rep);
    }
    out["classifier"] = classifiers;
    json structures = json::object();
    for (const auto& [name, rep] : result.structures) {
        structures[name] = sim_to_json(rep);
    }
    out["structure"] = structures;
    return out.dump(2) + "\n";
}

std::string crossval_report_text(const CrossValResult& result) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(3);
    for (const auto& [name, rep] : result.classifiers) {
        os << "classifier [" << name << "] on " << rep.pairs << " pairs\n";
        for (const auto& cls : rep.classes) {
            const auto& m = rep.per_class.at(cls);
            os << "  " << cls << ":";
            if (m.confidence) os << " confidence=" << *m.confidence;
            if (m.recall) os << " recall=" << *m.recall;
            if (m.precision) os << " precision=" << *m.precision;
            os << "\n";
        }
        os << "  accuracy=" << rep.accuracy << "\n";
    }
    for (const auto& [name, rep] : result.structures) {
        os << "structure [" << name << "]  (mean SimScore by node count)\n";
        os << "  nodes  arguments  sim_score\n";
        for (const auto& [n, g] : rep.by_nodes) {
            os << "  " << n << "\t" << g.arguments << "\t" << g.mean_sim << "\n";
        }
        os << "  any\t" << rep.arguments << "\t" << rep.mean_sim << "\n";
    }
    return os.str();
}

std::string ablation_report_json(const AblationReport& report) {
    json rows = json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"group", r.group},
                        {"sim_score", r.mean_sim},
                        {"pct_decrease", r.pct_decrease}});
    }
    json out = {{"with_word_vectors", report.with_wordvec},
                {"baseline_sim_score", report.baseline_sim},
                {"rows", rows}};
    return out.dump(2) + "\n";
}

std::string ablation_report_text(const AblationReport& report) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(3);
    os << "baseline mean SimScore " << report.baseline_sim
       << (report.with_wordvec ? " (with word vectors)\n" : " (without word vectors)\n");
    os << "  group      sim_score  %decrease\n";
    for (const auto& r : report.rows) {
        os << "  " << r.group << "\t" << r.mean_sim << "\t" << r.pct_decrease << "\n";
    }
    return os.str();
}

std::string predictions_json(const std::vector<PredictedStructure>& preds,
                             const std::map<std::string, double>& sims) {
    json arr = json::array();
    for (const auto& ps : preds) {
        json edges = json::array();
        for (const auto& e : ps.edges) {
            json je = {{"from", e.child}, {"to", e.parent}};
            if (e.label) je["label"] = to_string(*e.label);
            edges.push_back(je);
        }
        json jp = {{"id", ps.argument_id},
                   {"kind", to_string(ps.kind)},
                   {"edges", edges},
                   {"score", ps.total_score},
                   {"decoder", ps.decoder}};
        auto it = sims.find(ps.argument_id);
        if (it != sims.end()) jp["sim_score"] = it->second;
        arr.push_back(jp);
    }
    return json{{"predictions", arr}}.dump(2) + "\n";
}

}  // namespace argstruct
