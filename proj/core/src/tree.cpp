#include "streamlens/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "streamlens/error.hpp"

namespace streamlens {

namespace {

struct SplitChoice {
    bool found = false;
    int feature = 0;
    double threshold = 0.0;
    double weighted_impurity = 0.0;
};

struct NodeTask {
    std::vector<std::size_t> rows;
    int depth = 0;
    std::int32_t slot = 0;  // index into Tree::nodes to fill
};

class TreeBuilder {
public:
    TreeBuilder(const Matrix& x, const std::vector<Label>& y, const TreeParams& params, RngStream& rng)
        : x_(x), y_(y), params_(params), rng_(rng), dimension_(static_cast<int>(x.empty() ? 0 : x[0].size())) {}

    Tree build(std::vector<std::size_t> rows) {
        Tree tree;
        tree.dimension = dimension_;
        tree.nodes.emplace_back();
        std::vector<NodeTask> stack;
        stack.push_back({std::move(rows), 0, 0});
        while (!stack.empty()) {
            NodeTask task = std::move(stack.back());
            stack.pop_back();
            grow(tree, std::move(task), stack);
        }
        return tree;
    }

private:
    void grow(Tree& tree, NodeTask task, std::vector<NodeTask>& stack) {
        const std::size_t n = task.rows.size();
        std::size_t positives = 0;
        for (const auto row : task.rows) {
            if (y_[row] == Label::manipulated) ++positives;
        }

        TreeNode& node = tree.nodes[static_cast<std::size_t>(task.slot)];
        node.sample_count = static_cast<std::int64_t>(n);
        node.positive_fraction = static_cast<double>(positives) / static_cast<double>(n);

        const bool pure = positives == 0 || positives == n;
        const bool depth_capped = params_.max_depth > 0 && task.depth >= params_.max_depth;
        const auto min_leaf = static_cast<std::size_t>(params_.min_samples_leaf);
        if (pure || depth_capped || n < 2 * min_leaf) return;

        const auto choice = choose_split(task.rows, positives);
        if (!choice.found) return;

        node.feature_index = choice.feature;
        node.threshold = choice.threshold;

        std::vector<std::size_t> left_rows;
        std::vector<std::size_t> right_rows;
        left_rows.reserve(n);
        right_rows.reserve(n);
        for (const auto row : task.rows) {
            (x_[row][static_cast<std::size_t>(choice.feature)] <= choice.threshold ? left_rows : right_rows)
                .push_back(row);
        }

        const auto left_slot = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        const auto right_slot = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        // emplace_back may reallocate; re-resolve the node reference
        tree.nodes[static_cast<std::size_t>(task.slot)].left = left_slot;
        tree.nodes[static_cast<std::size_t>(task.slot)].right = right_slot;

        stack.push_back({std::move(right_rows), task.depth + 1, right_slot});
        stack.push_back({std::move(left_rows), task.depth + 1, left_slot});
    }

    SplitChoice choose_split(const std::vector<std::size_t>& rows, std::size_t positives) {
        const int feature_budget = params_.features_per_split > 0
                                       ? std::min(params_.features_per_split, dimension_)
                                       : std::max(1, static_cast<int>(std::sqrt(dimension_)));

        // sample without replacement, evaluated in ascending index order so
        // equal-gain ties resolve to the lowest feature index
        std::vector<int> candidates(static_cast<std::size_t>(dimension_));
        std::iota(candidates.begin(), candidates.end(), 0);
        for (int k = 0; k < feature_budget; ++k) {
            const auto j = static_cast<std::size_t>(k) +
                           rng_.next_index(static_cast<std::size_t>(dimension_ - k));
            std::swap(candidates[static_cast<std::size_t>(k)], candidates[j]);
        }
        std::sort(candidates.begin(), candidates.begin() + feature_budget);

        SplitChoice best;
        for (int k = 0; k < feature_budget; ++k) {
            consider_feature(candidates[static_cast<std::size_t>(k)], rows, positives, best);
        }
        if (!best.found) {
            // sampled features were all constant here; inspect the rest in
            // index order until one admits a split
            std::sort(candidates.begin() + feature_budget, candidates.end());
            for (std::size_t k = static_cast<std::size_t>(feature_budget); k < candidates.size(); ++k) {
                consider_feature(candidates[k], rows, positives, best);
                if (best.found) break;
            }
        }
        return best;
    }

    void consider_feature(int feature, const std::vector<std::size_t>& rows, std::size_t positives,
                          SplitChoice& best) {
        scratch_.clear();
        scratch_.reserve(rows.size());
        for (const auto row : rows) {
            scratch_.emplace_back(x_[row][static_cast<std::size_t>(feature)],
                                  y_[row] == Label::manipulated ? 1 : 0);
        }
        std::sort(scratch_.begin(), scratch_.end());

        const std::size_t n = scratch_.size();
        const auto min_leaf = static_cast<std::size_t>(params_.min_samples_leaf);
        std::size_t left_n = 0;
        std::size_t left_pos = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            ++left_n;
            left_pos += static_cast<std::size_t>(scratch_[i].second);
            if (scratch_[i].first == scratch_[i + 1].first) continue;  // not a distinct-value boundary
            if (left_n < min_leaf || n - left_n < min_leaf) continue;
            const double weighted =
                (static_cast<double>(left_n) * gini_impurity(left_pos, left_n) +
                 static_cast<double>(n - left_n) * gini_impurity(positives - left_pos, n - left_n)) /
                static_cast<double>(n);
            double threshold = scratch_[i].first + (scratch_[i + 1].first - scratch_[i].first) / 2.0;
            // a midpoint that rounds up to the next value would leak it left
            if (threshold >= scratch_[i + 1].first) threshold = scratch_[i].first;
            if (!best.found || weighted < best.weighted_impurity) {
                best = {true, feature, threshold, weighted};
            }
        }
    }

    const Matrix& x_;
    const std::vector<Label>& y_;
    const TreeParams& params_;
    RngStream& rng_;
    int dimension_;
    std::vector<std::pair<double, int>> scratch_;
};

}  // namespace

double gini_impurity(std::size_t positives, std::size_t total) {
    if (total == 0) return 0.0;
    const double p = static_cast<double>(positives) / static_cast<double>(total);
    return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

Tree train_tree(const Matrix& X, const std::vector<Label>& y, const TreeParams& params, RngStream& rng) {
    std::vector<std::size_t> rows(X.size());
    std::iota(rows.begin(), rows.end(), 0);
    return train_tree_on(X, y, std::move(rows), params, rng);
}

Tree train_tree_on(const Matrix& X, const std::vector<Label>& y, std::vector<std::size_t> rows,
                   const TreeParams& params, RngStream& rng) {
    if (X.size() != y.size() || rows.empty()) {
        throw Error(Errc::dimension_mismatch, "rows and labels must align and be non-empty");
    }
    const std::size_t dimension = X[0].size();
    for (const auto& row : X) {
        if (row.size() != dimension) {
            throw Error(Errc::dimension_mismatch, "ragged feature matrix");
        }
    }
    return TreeBuilder(X, y, params, rng).build(std::move(rows));
}

double predict_tree(const Tree& tree, std::span<const double> x) {
    if (static_cast<int>(x.size()) != tree.dimension) {
        throw Error(Errc::dimension_mismatch, "vector length " + std::to_string(x.size()) +
                                                  ", tree expects " + std::to_string(tree.dimension));
    }
    const TreeNode* node = &tree.nodes[0];
    while (!node->is_leaf()) {
        node = x[static_cast<std::size_t>(node->feature_index)] <= node->threshold
                   ? &tree.nodes[static_cast<std::size_t>(node->left)]
                   : &tree.nodes[static_cast<std::size_t>(node->right)];
    }
    return node->positive_fraction;
}

}  // namespace streamlens
