#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "streamlens/features.hpp"
#include "streamlens/rng.hpp"

namespace streamlens {

using Matrix = std::vector<std::vector<double>>;

struct TreeParams {
    int max_depth = 0;          // 0 = unlimited
    int min_samples_leaf = 1;
    int features_per_split = 0;  // 0 = floor(sqrt(d)), else explicit count
};

// Flat node storage; splits route value <= threshold left, > threshold right.
struct TreeNode {
    std::int32_t feature_index = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double positive_fraction = 0.0;  // leaves: positives / sample_count exactly
    std::int64_t sample_count = 0;

    bool is_leaf() const { return feature_index < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;  // root at 0
    int dimension = 0;
};

double gini_impurity(std::size_t positives, std::size_t total);

// CART with Gini impurity. Candidate thresholds are midpoints between
// consecutive distinct sorted values; the split maximizing impurity decrease
// wins, ties broken by (lower feature index, lower threshold). Each split
// samples features_per_split candidate features without replacement; if none
// of them admits a valid split the remaining features are inspected in index
// order, so a consistent dataset always refines to purity.
Tree train_tree(const Matrix& X, const std::vector<Label>& y, const TreeParams& params, RngStream& rng);

// As train_tree, restricted to the given rows (the forest's bootstrap hook).
Tree train_tree_on(const Matrix& X, const std::vector<Label>& y, std::vector<std::size_t> rows,
                   const TreeParams& params, RngStream& rng);

// Routes x to a leaf and returns its positive fraction.
double predict_tree(const Tree& tree, std::span<const double> x);

}  // namespace streamlens
