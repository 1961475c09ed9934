// Benchmark comparing the OpenMP kernels against their serial reference
// implementations: exhaustive tree decoding, arborescence, chain search,
// the Monte Carlo baseline and batch pair scoring.

#include <cstdio>
#include <chrono>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "argstruct/decoder.hpp"
#include "argstruct/evaluation.hpp"
#include "argstruct/experiment.hpp"
#include "argstruct/rng.hpp"
#include "argstruct/synthetic.hpp"

using namespace argstruct;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

EdgeWeights random_weights(int n, uint64_t seed) {
    Rng rng(seed);
    EdgeWeights w;
    w.argument_id = "bench";
    for (int i = 0; i < n; ++i) w.node_ids.push_back("n" + std::to_string(i));
    w.w.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) w.at(static_cast<size_t>(i), static_cast<size_t>(j)) = rng.uniform();
        }
    }
    return w;
}

struct Row {
    std::string name;
    double serial_ms;
    double parallel_ms;
    bool equal;
};

void print_rows(const std::vector<Row>& rows) {
    std::printf("%-34s %12s %12s %9s %7s\n", "kernel", "serial ms", "openmp ms",
                "speedup", "equal");
    for (const auto& r : rows) {
        std::printf("%-34s %12.1f %12.1f %8.2fx %7s\n", r.name.c_str(), r.serial_ms,
                    r.parallel_ms, r.serial_ms / r.parallel_ms,
                    r.equal ? "yes" : "NO");
    }
}

template <typename F, typename G, typename Eq>
Row bench(const std::string& name, int reps, F serial, G parallel, Eq equal) {
    auto s0 = now_ms();
    auto sr = serial();
    for (int i = 1; i < reps; ++i) sr = serial();
    double serial_ms = (now_ms() - s0) / reps;

    auto p0 = now_ms();
    auto pr = parallel();
    for (int i = 1; i < reps; ++i) pr = parallel();
    double parallel_ms = (now_ms() - p0) / reps;

    return {name, serial_ms, parallel_ms, equal(sr, pr)};
}

}  // namespace

int main(int argc, char** argv) {
    int threads = 0;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--threads" && i + 1 < argc) threads = std::atoi(argv[++i]);
    }
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    std::printf("OpenMP with %d thread(s)\n\n", threads > 0 ? threads : omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serially\n\n");
#endif

    std::vector<Row> rows;

    {
        auto w = random_weights(9, 1);
        rows.push_back(bench(
            "best_tree_exhaustive n=9", 3,
            [&] { return best_tree_exhaustive_serial(w, 12); },
            [&] { return best_tree_exhaustive(w, 12); },
            [](const PredictedStructure& a, const PredictedStructure& b) {
                return a.total_score == b.total_score;
            }));
    }
    {
        std::vector<EdgeWeights> batch;
        for (int i = 0; i < 200; ++i) batch.push_back(random_weights(40, 100 + i));
        auto run = [&](bool parallel) {
            double total = 0;
            for (const auto& w : batch) {
                total += (parallel ? best_arborescence(w) : best_arborescence_serial(w))
                             .total_score;
            }
            return total;
        };
        rows.push_back(bench(
            "best_arborescence n=40 x200", 1, [&] { return run(false); },
            [&] { return run(true); }, [](double a, double b) { return a == b; }));
    }
    {
        auto w = random_weights(9, 2);
        rows.push_back(bench(
            "best_chain n=9", 3, [&] { return best_chain_serial(w, 9); },
            [&] { return best_chain(w, 9); },
            [](const PredictedStructure& a, const PredictedStructure& b) {
                return a.total_score == b.total_score;
            }));
    }
    {
        rows.push_back(bench(
            "random_baseline n=5 1M trials", 1,
            [&] { return random_baseline(5, 1000000, 7, false).monte_carlo; },
            [&] { return random_baseline(5, 1000000, 7, true).monte_carlo; },
            [](double a, double b) { return a == b; }));
    }
    {
        // batch feature extraction over a mid-sized argument's pair set
        SyntheticSpec spec;
        spec.arguments = 60;
        spec.seed = 3;
        auto corpus = generate_planted_corpus(spec);
        FeatureArtifacts artifacts;
        artifacts.embeddings = std::make_shared<EmbeddingTable>(planted_embeddings());
        artifacts.annotator = std::make_shared<OfflineAnnotator>();
        std::vector<std::pair<TokenSequence, TokenSequence>> fit_pairs;
        for (const auto& arg : corpus) {
            for (const auto& e : arg.edges) {
                fit_pairs.push_back({arg.find_node(e.from)->tokens,
                                     arg.find_node(e.to)->tokens});
            }
        }
        artifacts.vocab = fit_ngram_vocab(fit_pairs, 3.0);
        auto layout = make_layout(
            {FeatureGroup::Discourse, FeatureGroup::Modal, FeatureGroup::Lcp,
             FeatureGroup::Entity, FeatureGroup::Ngram, FeatureGroup::WordVec},
            artifacts);
        std::vector<LabeledPair> pairs;
        for (const auto& arg : corpus) {
            for (auto& p : generate_pairs_type1(arg)) pairs.push_back(std::move(p));
        }
        auto run = [&](bool parallel) {
            auto rows_out = extract_batch(pairs, corpus, layout, artifacts, parallel);
            double checksum = 0;
            for (const auto& r : rows_out) {
                for (double v : r) checksum += v;
            }
            return checksum;
        };
        rows.push_back(bench(
            "extract_batch " + std::to_string(pairs.size()) + " pairs", 3,
            [&] { return run(false); }, [&] { return run(true); },
            [](double a, double b) { return a == b; }));
    }

    print_rows(rows);
    return 0;
}
