#ifndef ARGSTRUCT_RNG_HPP
#define ARGSTRUCT_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace argstruct {

// Seeded RNG with explicit draw primitives. std::uniform_*_distribution is
// implementation-defined, so every draw that feeds a reproducible result
// goes through these instead.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }

    // Uniform integer in [0, n). n must be > 0.
    uint64_t bounded(uint64_t n) {
        // Rejection-free modulo draw; bias is < n / 2^64.
        return gen_() % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Fisher-Yates shuffle; stable across standard libraries.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Derive an independent stream, e.g. one per fold or per trial.
    static uint64_t mix(uint64_t seed, uint64_t stream) {
        // splitmix64 finalizer over the combined value.
        uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace argstruct

#endif
