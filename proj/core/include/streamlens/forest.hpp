#pragma once

#include "streamlens/tree.hpp"

namespace streamlens {

struct ForestParams {
    int n_trees = 100;
    TreeParams tree;
};

struct ForestModel {
    ForestParams params;  // features_per_split resolved to a concrete count
    std::uint64_t seed = 0;
    std::vector<Tree> trees;
    int dimension = 0;

    // arithmetic mean of the trees' leaf fractions, hence in [0, 1]
    double predict(std::span<const double> x) const;
};

// The bootstrap multiset for one tree: n draws with replacement from a stream
// derived from (seed, tree_index). Exposed so callers can reproduce in-bag
// membership.
std::vector<std::size_t> bootstrap_sample(std::uint64_t seed, std::size_t tree_index, std::size_t n);

// Trains n_trees CART trees on independent bootstrap resamples; each split
// considers a feature subset drawn from the tree's own stream, so the model
// depends only on (data, params, seed), not on worker count.
ForestModel train_forest(const Matrix& X, const std::vector<Label>& y, const ForestParams& params,
                         std::uint64_t seed, unsigned workers = 1);

}  // namespace streamlens
