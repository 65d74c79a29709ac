#include "streamlens/splits.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "streamlens/error.hpp"
#include "streamlens/rng.hpp"

namespace streamlens {

namespace {

constexpr std::size_t kClasses = 2;

std::size_t round_half_away(double x) {
    return static_cast<std::size_t>(std::llround(x));
}

std::array<std::vector<std::size_t>, kClasses> indices_by_class(const std::vector<Label>& labels) {
    std::array<std::vector<std::size_t>, kClasses> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        by_class[static_cast<std::size_t>(labels[i])].push_back(i);
    }
    return by_class;
}

void require_both_classes(const std::array<std::vector<std::size_t>, kClasses>& by_class) {
    if (by_class[0].empty() || by_class[1].empty()) {
        throw Error(Errc::degenerate_stratum, "both classes must be present");
    }
}

}  // namespace

std::vector<std::size_t> stratified_counts(const std::vector<Label>& labels, double fraction,
                                           bool adjust_total) {
    const auto by_class = indices_by_class(labels);
    require_both_classes(by_class);
    std::vector<std::size_t> counts(kClasses);
    for (std::size_t c = 0; c < kClasses; ++c) {
        counts[c] = round_half_away(static_cast<double>(by_class[c].size()) * fraction);
    }
    if (adjust_total) {
        const std::size_t target = round_half_away(static_cast<double>(labels.size()) * fraction);
        const std::size_t majority = by_class[0].size() >= by_class[1].size() ? 0 : 1;
        const auto sum = counts[0] + counts[1];
        if (sum != target) {
            const auto adjusted = static_cast<std::int64_t>(counts[majority]) +
                                  (static_cast<std::int64_t>(target) - static_cast<std::int64_t>(sum));
            counts[majority] = static_cast<std::size_t>(
                std::clamp<std::int64_t>(adjusted, 0, static_cast<std::int64_t>(by_class[majority].size())));
        }
    }
    return counts;
}

SplitPlan stratified_shuffle_split(const std::vector<Label>& labels, int n_splits, double eval_fraction,
                                   std::uint64_t seed) {
    auto by_class = indices_by_class(labels);
    require_both_classes(by_class);

    std::array<std::size_t, kClasses> eval_counts;
    for (std::size_t c = 0; c < kClasses; ++c) {
        eval_counts[c] = round_half_away(static_cast<double>(by_class[c].size()) * eval_fraction);
        if (eval_counts[c] == 0 || eval_counts[c] >= by_class[c].size()) {
            throw Error(Errc::degenerate_stratum,
                        "class " + std::to_string(c) + " too small for eval fraction");
        }
    }

    SplitPlan plan;
    plan.n_splits = n_splits;
    plan.eval_fraction = eval_fraction;
    plan.seed = seed;
    plan.splits.reserve(static_cast<std::size_t>(n_splits));
    for (int s = 0; s < n_splits; ++s) {
        auto rng = RngStream::derived(seed, rng_tag::cv_split, static_cast<std::uint64_t>(s));
        SplitPlan::Split split;
        for (std::size_t c = 0; c < kClasses; ++c) {
            auto shuffled = by_class[c];
            rng.shuffle(shuffled);
            split.eval_indices.insert(split.eval_indices.end(), shuffled.begin(),
                                      shuffled.begin() + static_cast<std::ptrdiff_t>(eval_counts[c]));
            split.train_indices.insert(split.train_indices.end(),
                                       shuffled.begin() + static_cast<std::ptrdiff_t>(eval_counts[c]),
                                       shuffled.end());
        }
        std::sort(split.eval_indices.begin(), split.eval_indices.end());
        std::sort(split.train_indices.begin(), split.train_indices.end());
        plan.splits.push_back(std::move(split));
    }
    return plan;
}

namespace {

std::vector<std::size_t> stratified_draw(const std::array<std::vector<std::size_t>, kClasses>& by_class,
                                         const std::vector<std::size_t>& counts, std::uint64_t seed,
                                         std::uint64_t tag) {
    std::vector<std::size_t> drawn;
    auto rng = RngStream::derived(seed, tag);
    for (std::size_t c = 0; c < kClasses; ++c) {
        if (counts[c] == 0 || counts[c] > by_class[c].size()) {
            throw Error(Errc::degenerate_stratum, "class " + std::to_string(c) + " cannot supply " +
                                                      std::to_string(counts[c]) + " rows");
        }
        auto shuffled = by_class[c];
        rng.shuffle(shuffled);
        drawn.insert(drawn.end(), shuffled.begin(),
                     shuffled.begin() + static_cast<std::ptrdiff_t>(counts[c]));
    }
    std::sort(drawn.begin(), drawn.end());
    return drawn;
}

}  // namespace

std::vector<std::size_t> subsample_budget(const std::vector<Label>& labels, double fraction,
                                          std::uint64_t seed) {
    const auto counts = stratified_counts(labels, fraction, /*adjust_total=*/true);
    return stratified_draw(indices_by_class(labels), counts, seed, rng_tag::subsample);
}

std::vector<std::size_t> subsample_budget_from_pool(const std::vector<Label>& labels,
                                                    const std::vector<std::size_t>& pool, double fraction,
                                                    std::uint64_t seed) {
    auto counts = stratified_counts(labels, fraction, /*adjust_total=*/true);
    std::array<std::vector<std::size_t>, kClasses> by_class;
    for (const auto i : pool) {
        by_class[static_cast<std::size_t>(labels.at(i))].push_back(i);
    }
    // whole-set targets can exceed a class's pool by a rounding row; cap the
    // class and move the shortfall across, keeping the total
    for (std::size_t c = 0; c < kClasses; ++c) {
        if (counts[c] > by_class[c].size()) {
            const auto shortfall = counts[c] - by_class[c].size();
            counts[c] = by_class[c].size();
            const std::size_t other = 1 - c;
            counts[other] = std::min(counts[other] + shortfall, by_class[other].size());
        }
    }
    return stratified_draw(by_class, counts, seed, rng_tag::subsample);
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> sequester_validation(
    const std::vector<Label>& labels, std::uint64_t seed) {
    const auto by_class = indices_by_class(labels);
    require_both_classes(by_class);
    const auto counts = stratified_counts(labels, 0.25, /*adjust_total=*/true);
    for (std::size_t c = 0; c < kClasses; ++c) {
        if (counts[c] == 0 || counts[c] >= by_class[c].size()) {
            throw Error(Errc::degenerate_stratum, "class " + std::to_string(c) + " too small to sequester");
        }
    }
    auto validation = stratified_draw(by_class, counts, seed, rng_tag::sequester);
    std::vector<std::size_t> train;
    train.reserve(labels.size() - validation.size());
    auto next = validation.begin();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (next != validation.end() && *next == i) {
            ++next;
        } else {
            train.push_back(i);
        }
    }
    return {std::move(train), std::move(validation)};
}

}  // namespace streamlens
