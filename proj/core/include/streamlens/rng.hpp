#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace streamlens {

// Splittable seeded randomness. Every stochastic unit of work (a tree's
// bootstrap, a search trial, a CV split, a simulation seed) draws from its own
// stream derived from (seed, tag, index), so results never depend on worker
// count or execution order.

namespace rng_tag {
inline constexpr std::uint64_t bootstrap = 0x626f6f74;   // forest bootstraps
inline constexpr std::uint64_t feature_pick = 0x66656174;  // per-tree split sampling
inline constexpr std::uint64_t cv_split = 0x73706c69;    // shuffle-split shuffles
inline constexpr std::uint64_t subsample = 0x73756273;   // budget draws
inline constexpr std::uint64_t sequester = 0x73657175;   // validation holdout
inline constexpr std::uint64_t trial = 0x7472696c;       // random-search trials
inline constexpr std::uint64_t platt_fold = 0x706c6174;  // SVM calibration folds
inline constexpr std::uint64_t simulation = 0x73696d75;  // baseline simulations
inline constexpr std::uint64_t model = 0x6d6f646c;       // per-trial model seeds
}  // namespace rng_tag

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0) {
    return splitmix64(splitmix64(seed ^ splitmix64(tag)) ^ splitmix64(index));
}

// Thin deterministic wrapper over mt19937_64. Draw helpers avoid
// std::*_distribution so the draw count per call is fixed.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    static RngStream derived(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0) {
        return RngStream(derive_seed(seed, tag, index));
    }

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [lo, hi], inclusive
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return lo;  // full 64-bit range
        // rejection sampling keeps the draw unbiased
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % span + 1) % span;
        std::uint64_t v = next_u64();
        while (v > limit) v = next_u64();
        return lo + static_cast<std::int64_t>(v % span);
    }

    std::size_t next_index(std::size_t n) {
        return static_cast<std::size_t>(next_int(0, static_cast<std::int64_t>(n) - 1));
    }

    double log_uniform(double lo, double hi) {
        const double u = next_double();
        return std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo)));
    }

    // standard normal via Box-Muller (fixed two draws)
    double next_gaussian() {
        double u1 = next_double();
        double u2 = next_double();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    bool next_bernoulli(double p) { return next_double() < p; }

    // Fisher-Yates, explicit so shuffles do not depend on the standard library
    // implementation of std::shuffle
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = next_index(i);
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace streamlens
