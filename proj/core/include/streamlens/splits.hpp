#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "streamlens/features.hpp"

namespace streamlens {

struct SplitPlan {
    struct Split {
        std::vector<std::size_t> train_indices;
        std::vector<std::size_t> eval_indices;
    };
    std::vector<Split> splits;
    int n_splits = 0;
    double eval_fraction = 0.0;
    std::uint64_t seed = 0;
};

// Per-class counts for a stratified cut: round-half-away-from-zero per class.
// With adjust_total set, the summed count is reconciled to
// round(fraction * n) by adjusting the majority class, which reproduces the
// 68/169/339/508 arithmetic on a 677-row set.
std::vector<std::size_t> stratified_counts(const std::vector<Label>& labels, double fraction,
                                           bool adjust_total);

// n_splits independent stratified shuffle cuts: each class is shuffled with a
// stream derived from (seed, split index) and cut at round(count * fraction).
// Throws DegenerateStratum when a class cannot appear on both sides.
SplitPlan stratified_shuffle_split(const std::vector<Label>& labels, int n_splits, double eval_fraction,
                                   std::uint64_t seed);

// Stratified draw of round(fraction * n) indices preserving the class ratio.
std::vector<std::size_t> subsample_budget(const std::vector<Label>& labels, double fraction,
                                          std::uint64_t seed);

// As subsample_budget, but drawing from a restricted pool of positions while
// the per-class targets come from the full label set. The pipeline uses this
// to budget-subsample the non-sequestered remainder against whole-set counts.
std::vector<std::size_t> subsample_budget_from_pool(const std::vector<Label>& labels,
                                                    const std::vector<std::size_t>& pool, double fraction,
                                                    std::uint64_t seed);

// Single stratified 75/25 cut; the returned validation side never enters
// search-time training folds.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> sequester_validation(
    const std::vector<Label>& labels, std::uint64_t seed);

}  // namespace streamlens
