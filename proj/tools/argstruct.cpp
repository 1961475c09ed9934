// Command-line front end: train / predict / crossval / ablate / validate.
// Errors leave on stderr as one machine-parseable JSON line; data goes to
// files or stdout.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "argstruct/experiment.hpp"
#include "argstruct/rng.hpp"

namespace fs = std::filesystem;
using namespace argstruct;
using nlohmann::json;

namespace {

// flag values stay unset unless given; config-file values fill the gaps
struct CliOptions {
    std::optional<std::string> config;
    std::optional<std::string> corpus;
    std::optional<std::string> embeddings;
    std::optional<std::string> negation_lexicon;
    std::optional<std::string> antonym_lexicon;
    std::optional<std::string> annotator;
    std::optional<std::string> annotator_endpoint;
    std::optional<std::string> entity_cache;
    std::optional<std::string> out;
    std::optional<std::string> framework;
    std::optional<std::string> detection_framework;
    std::optional<std::string> model;
    std::optional<std::string> decoder;
    std::optional<std::string> features;  // comma list
    std::optional<int> k;
    std::optional<uint64_t> seed;
    std::optional<int> max_nodes;
    std::optional<int> tree_cap;
    std::optional<int> chain_cap;
    std::optional<double> ngram_threshold;
    std::optional<int> threads;
    std::optional<bool> serial;
    // predict-only
    std::optional<std::string> model_dir;
    // ablate-only
    std::optional<std::string> groups;
    std::optional<bool> without_wordvec;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config, "JSON config file; flags override it");
    cmd->add_option("--corpus", opt.corpus, "corpus JSON file");
    cmd->add_option("--embeddings", opt.embeddings, "word2vec text embeddings");
    cmd->add_option("--negation-lexicon", opt.negation_lexicon,
                    "negation marker list (one word per line)");
    cmd->add_option("--antonym-lexicon", opt.antonym_lexicon,
                    "antonym pairs (word<TAB>antonym per line)");
    cmd->add_option("--annotator", opt.annotator,
                    "entity annotator: offline | remote | remote-with-fallback");
    cmd->add_option("--annotator-endpoint", opt.annotator_endpoint,
                    "entity service URL (key via ARGSTRUCT_TAGME_KEY)");
    cmd->add_option("--entity-cache", opt.entity_cache, "entity annotation cache file");
    cmd->add_option("--out", opt.out, "output directory (or file for predict)");
    cmd->add_option("--framework", opt.framework,
                    "type1 | type2 | multiclass | two-step");
    cmd->add_option("--detection-framework", opt.detection_framework,
                    "two-step detection stage: type1 | type2");
    cmd->add_option("--model", opt.model, "svm | mlp");
    cmd->add_option("--decoder", opt.decoder, "exhaustive | arborescence | chain");
    cmd->add_option("--features", opt.features, "comma-separated feature groups");
    cmd->add_option("--k", opt.k, "fold count");
    cmd->add_option("--seed", opt.seed, "RNG seed");
    cmd->add_option("--max-nodes", opt.max_nodes, "skip arguments above this size");
    cmd->add_option("--tree-cap", opt.tree_cap, "exhaustive decoder size cap");
    cmd->add_option("--chain-cap", opt.chain_cap, "chain decoder size cap");
    cmd->add_option("--ngram-threshold", opt.ngram_threshold,
                    "likelihood-ratio threshold");
    cmd->add_option("--threads", opt.threads, "worker threads (0 = default)");
    cmd->add_flag("--serial", opt.serial, "disable parallel kernels");
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

ExperimentConfig build_config(const CliOptions& opt) {
    ExperimentConfig cfg;

    if (opt.config) {
        std::ifstream in(*opt.config);
        if (!in) throw Error("cannot open config file: " + *opt.config);
        json doc;
        try {
            in >> doc;
        } catch (const json::exception& e) {
            throw Error(std::string("config file is not valid JSON: ") + e.what());
        }
        auto get_str = [&](const char* key, std::string& into) {
            if (doc.contains(key)) into = doc.at(key).get<std::string>();
        };
        get_str("corpus", cfg.corpus_path);
        get_str("embeddings", cfg.embeddings_path);
        get_str("negation_lexicon", cfg.negation_lexicon_path);
        get_str("antonym_lexicon", cfg.antonym_lexicon_path);
        get_str("annotator", cfg.annotator_mode);
        get_str("annotator_endpoint", cfg.annotator_endpoint);
        get_str("entity_cache", cfg.entity_cache_path);
        get_str("out", cfg.out_dir);
        if (doc.contains("framework")) {
            cfg.framework = framework_from_string(doc.at("framework").get<std::string>());
        }
        if (doc.contains("detection_framework")) {
            cfg.detection_framework =
                framework_from_string(doc.at("detection_framework").get<std::string>());
        }
        if (doc.contains("model")) {
            cfg.model = model_kind_from_string(doc.at("model").get<std::string>());
        }
        if (doc.contains("decoder")) {
            cfg.decoder = decoder_kind_from_string(doc.at("decoder").get<std::string>());
        }
        if (doc.contains("features")) {
            cfg.features = doc.at("features").get<std::vector<std::string>>();
        }
        if (doc.contains("k")) cfg.k = doc.at("k").get<int>();
        if (doc.contains("seed")) cfg.seed = doc.at("seed").get<uint64_t>();
        if (doc.contains("max_nodes")) cfg.max_nodes = doc.at("max_nodes").get<int>();
        if (doc.contains("tree_cap")) cfg.tree_cap = doc.at("tree_cap").get<int>();
        if (doc.contains("chain_cap")) cfg.chain_cap = doc.at("chain_cap").get<int>();
        if (doc.contains("ngram_threshold")) {
            cfg.ngram_threshold = doc.at("ngram_threshold").get<double>();
        }
        if (doc.contains("threads")) cfg.threads = doc.at("threads").get<int>();
        if (doc.contains("parallel")) cfg.parallel = doc.at("parallel").get<bool>();
        if (doc.contains("svm")) {
            const auto& s = doc.at("svm");
            if (s.contains("epochs")) cfg.svm.epochs = s.at("epochs").get<int>();
            if (s.contains("learning_rate")) {
                cfg.svm.learning_rate = s.at("learning_rate").get<double>();
            }
            if (s.contains("lambda")) cfg.svm.lambda = s.at("lambda").get<double>();
            if (s.contains("balanced")) cfg.svm.balanced = s.at("balanced").get<bool>();
        }
        if (doc.contains("mlp")) {
            const auto& m = doc.at("mlp");
            if (m.contains("hidden")) {
                cfg.mlp.hidden = m.at("hidden").get<std::vector<size_t>>();
            }
            if (m.contains("epochs")) cfg.mlp.epochs = m.at("epochs").get<int>();
            if (m.contains("learning_rate")) {
                cfg.mlp.learning_rate = m.at("learning_rate").get<double>();
            }
            if (m.contains("batch_size")) {
                cfg.mlp.batch_size = m.at("batch_size").get<size_t>();
            }
        }
    }

    // flags win
    if (opt.corpus) cfg.corpus_path = *opt.corpus;
    if (opt.embeddings) cfg.embeddings_path = *opt.embeddings;
    if (opt.negation_lexicon) cfg.negation_lexicon_path = *opt.negation_lexicon;
    if (opt.antonym_lexicon) cfg.antonym_lexicon_path = *opt.antonym_lexicon;
    if (opt.annotator) cfg.annotator_mode = *opt.annotator;
    if (opt.annotator_endpoint) cfg.annotator_endpoint = *opt.annotator_endpoint;
    if (opt.entity_cache) cfg.entity_cache_path = *opt.entity_cache;
    if (opt.out) cfg.out_dir = *opt.out;
    if (opt.framework) cfg.framework = framework_from_string(*opt.framework);
    if (opt.detection_framework) {
        cfg.detection_framework = framework_from_string(*opt.detection_framework);
    }
    if (opt.model) cfg.model = model_kind_from_string(*opt.model);
    if (opt.decoder) cfg.decoder = decoder_kind_from_string(*opt.decoder);
    if (opt.features) cfg.features = split_commas(*opt.features);
    if (opt.k) cfg.k = *opt.k;
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.max_nodes) cfg.max_nodes = *opt.max_nodes;
    if (opt.tree_cap) cfg.tree_cap = *opt.tree_cap;
    if (opt.chain_cap) cfg.chain_cap = *opt.chain_cap;
    if (opt.ngram_threshold) cfg.ngram_threshold = *opt.ngram_threshold;
    if (opt.threads) cfg.threads = *opt.threads;
    if (opt.serial && *opt.serial) cfg.parallel = false;
    return cfg;
}

std::vector<Argument> load_corpus(const ExperimentConfig& cfg) {
    if (cfg.corpus_path.empty()) throw Error("no corpus given (--corpus or config)");
    return parse_corpus(cfg.corpus_path);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << content;
    if (!out) throw Error("I/O error writing: " + path);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void require_out_dir(const ExperimentConfig& cfg) {
    if (cfg.out_dir.empty()) throw Error("no output directory given (--out)");
    fs::create_directories(cfg.out_dir);
}

int cmd_validate(const ExperimentConfig& cfg) {
    auto corpus = load_corpus(cfg);  // parse_corpus already validates
    int oversize = 0;
    for (const auto& arg : corpus) {
        ValidationReport rep = validate_argument(arg, cfg.max_nodes);
        if (rep.oversize) {
            std::cout << arg.id << ": ok (oversize: " << arg.nodes.size() << " nodes)\n";
            ++oversize;
        } else {
            std::cout << arg.id << ": ok\n";
        }
    }
    std::cout << corpus.size() << " arguments valid, " << oversize
              << " above the node cap of " << cfg.max_nodes << "\n";
    return 0;
}

int cmd_train(const ExperimentConfig& cfg) {
    require_out_dir(cfg);
    auto corpus = load_corpus(cfg);
    FeatureArtifacts base = load_artifacts(cfg);

    // same eligibility rules as cross-validation, minus the fold split
    std::vector<Argument> training;
    for (const auto& arg : corpus) {
        ValidationReport rep = validate_argument(arg, cfg.max_nodes);
        bool support_only = cfg.framework == Framework::Type1 ||
                            cfg.framework == Framework::Type2;
        if (!rep.ok || rep.oversize || arg.nodes.size() < 2 || arg.edges.empty() ||
            (support_only && arg.has_attack_edges())) {
            std::cerr << "note: skipping argument '" << arg.id << "'\n";
            continue;
        }
        training.push_back(arg);
    }
    if (training.empty()) throw Error("no trainable arguments in the corpus");

    auto emit = [&](const TrainedPipeline& tp, const std::string& model_name,
                    const std::string& task_name) {
        save_model(cfg.out_dir + "/" + model_name, tp.model);
        write_file(cfg.out_dir + "/ngram_vocab.json", vocab_to_json(tp.artifacts.vocab));
        json stats = {{"fingerprint", tp.layout.fingerprint},
                      {"feature_width", tp.layout.total_width}};
        const auto& classes = model_classes(tp.model);
        json counts = json::object();
        for (size_t c = 0; c < classes.size(); ++c) {
            counts[classes[c]] = tp.class_counts[c];
        }
        stats["class_counts"] = counts;
        write_file(cfg.out_dir + "/" + task_name + "_stats.json", stats.dump(2) + "\n");
        std::cout << task_name << ": feature width " << tp.layout.total_width
                  << ", classes";
        for (size_t c = 0; c < classes.size(); ++c) {
            std::cout << " " << classes[c] << "=" << tp.class_counts[c];
        }
        std::cout << "\n";
    };

    if (cfg.framework == Framework::TwoStep) {
        TrainedPipeline detection =
            train_pipeline(training, cfg, TrainingTask::Detection, cfg.seed, base);
        TrainedPipeline resolver = train_pipeline(training, cfg, TrainingTask::Resolver,
                                                  Rng::mix(cfg.seed, 5000), base);
        emit(detection, "model.bin", "detection");
        emit(resolver, "resolver.bin", "resolver");
    } else {
        TrainingTask task = cfg.framework == Framework::Multiclass
                                ? TrainingTask::SingleStep
                                : TrainingTask::Binary;
        TrainedPipeline tp = train_pipeline(training, cfg, task, cfg.seed, base);
        emit(tp, "model.bin", "model");
    }
    return 0;
}

TrainedPipeline load_pipeline(const ExperimentConfig& cfg, const std::string& dir,
                              const std::string& model_name) {
    TrainedPipeline tp;
    tp.model = load_model(dir + "/" + model_name);
    tp.artifacts = load_artifacts(cfg);
    std::string vocab_path = dir + "/ngram_vocab.json";
    if (fs::exists(vocab_path)) {
        tp.artifacts.vocab = vocab_from_json(slurp(vocab_path));
    }
    tp.layout = make_layout(parse_feature_mask(cfg.features), tp.artifacts);
    if (tp.layout.fingerprint != model_fingerprint(tp.model)) {
        throw Error("feature layout fingerprint mismatch: model '" +
                    model_fingerprint(tp.model) + "' vs configured '" +
                    tp.layout.fingerprint + "'");
    }
    return tp;
}

int cmd_predict(const ExperimentConfig& cfg, const std::string& model_dir) {
    auto corpus = load_corpus(cfg);
    std::string dir = model_dir.empty() ? cfg.out_dir : model_dir;
    if (dir.empty()) throw Error("no model directory given (--model-dir)");

    TrainedPipeline tp = load_pipeline(cfg, dir, "model.bin");
    TrainedPipeline resolver;
    bool two_step = cfg.framework == Framework::TwoStep;
    if (two_step) resolver = load_pipeline(cfg, dir, "resolver.bin");

    std::vector<PredictedStructure> preds;
    std::map<std::string, double> sims;
    for (const auto& arg : corpus) {
        if (arg.nodes.size() < 2) {
            throw Error("argument '" + arg.id + "' has fewer than 2 nodes");
        }
        PredictedStructure ps;
        if (cfg.framework == Framework::Multiclass) {
            ScoreMatrix sm = score_argument(tp.model, arg, tp.layout, tp.artifacts,
                                            ScoreMode::Multiclass, cfg.parallel);
            StructureKind kind = cfg.decoder == DecoderKind::Chain
                                     ? StructureKind::Chain
                                     : StructureKind::Tree;
            ps = decode_single_step(sm, kind, cfg.tree_cap, cfg.chain_cap);
        } else {
            ScoreMatrix sm = score_argument(tp.model, arg, tp.layout, tp.artifacts,
                                            ScoreMode::Binary, cfg.parallel);
            EdgeWeights w = EdgeWeights::from_support(sm);
            switch (cfg.decoder) {
                case DecoderKind::Exhaustive:
                    ps = best_tree_exhaustive(w, cfg.tree_cap);
                    break;
                case DecoderKind::Arborescence:
                    ps = best_arborescence(w);
                    break;
                case DecoderKind::Chain:
                    ps = best_chain(w, cfg.chain_cap);
                    break;
            }
            if (two_step) {
                ps.decoder = "two-step";
                const auto& classes = model_classes(resolver.model);
                for (auto& e : ps.edges) {
                    LabeledPair pair{arg.id, e.child, e.parent, Relation::Neutral};
                    FeatureVector x =
                        extract(pair, arg, resolver.layout, resolver.artifacts);
                    auto scores = model_raw_scores(resolver.model, x);
                    e.label = relation_from_string(
                        classes[static_cast<size_t>(predicted_class(scores))]);
                }
            }
        }
        if (!arg.edges.empty()) sims[arg.id] = sim_score(ps, arg);
        preds.push_back(std::move(ps));
    }

    std::string out = predictions_json(preds, sims);
    if (cfg.out_dir.empty()) {
        std::cout << out;
    } else {
        fs::path path(cfg.out_dir);
        if (!path.has_extension()) {
            fs::create_directories(path);
            path /= "predictions.json";
        }
        write_file(path.string(), out);
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}

int cmd_crossval(const ExperimentConfig& cfg) {
    require_out_dir(cfg);
    auto corpus = load_corpus(cfg);
    CrossValResult result = run_cross_validation(corpus, cfg);
    write_file(cfg.out_dir + "/report.json", crossval_report_json(result, cfg));
    write_file(cfg.out_dir + "/report.txt", crossval_report_text(result));
    std::cout << crossval_report_text(result);
    return 0;
}

int cmd_ablate(const ExperimentConfig& cfg, const std::vector<std::string>& groups,
               bool without_wordvec) {
    require_out_dir(cfg);
    auto corpus = load_corpus(cfg);
    std::vector<std::string> use = groups.empty() ? cfg.features : groups;
    AblationReport report = run_ablation(corpus, cfg, use, !without_wordvec);
    std::string suffix = without_wordvec ? "_without_wordvec" : "";
    write_file(cfg.out_dir + "/ablation" + suffix + ".json",
               ablation_report_json(report));
    write_file(cfg.out_dir + "/ablation" + suffix + ".txt",
               ablation_report_text(report));
    std::cout << ablation_report_text(report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"argument structure prediction over proposition sets"};
    app.require_subcommand(1);

    CliOptions opt;
    auto* train = app.add_subcommand("train", "fit a model on a whole corpus");
    auto* predict = app.add_subcommand("predict", "decode structures with a trained model");
    auto* crossval = app.add_subcommand("crossval", "k-fold cross-validated experiment");
    auto* ablate = app.add_subcommand("ablate", "leave-one-out feature ablation");
    auto* validate = app.add_subcommand("validate", "lint a corpus file");
    for (auto* cmd : {train, predict, crossval, ablate, validate}) {
        add_common_flags(cmd, opt);
    }
    predict->add_option("--model-dir", opt.model_dir,
                        "directory holding model.bin and ngram_vocab.json");
    ablate->add_option("--groups", opt.groups, "comma-separated groups to ablate");
    ablate->add_flag("--without-wordvec", opt.without_wordvec,
                     "run the ablation with word vectors globally disabled");

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg = build_config(opt);
        if (train->parsed()) return cmd_train(cfg);
        if (predict->parsed()) return cmd_predict(cfg, opt.model_dir.value_or(""));
        if (crossval->parsed()) return cmd_crossval(cfg);
        if (ablate->parsed()) {
            return cmd_ablate(cfg,
                              opt.groups ? split_commas(*opt.groups)
                                         : std::vector<std::string>{},
                              opt.without_wordvec.value_or(false));
        }
        if (validate->parsed()) return cmd_validate(cfg);
        throw Error("no subcommand given");
    } catch (const std::exception& e) {
        json err = {{"error", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
