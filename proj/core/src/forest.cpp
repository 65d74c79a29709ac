#include "streamlens/forest.hpp"

#include <cmath>

#include "streamlens/error.hpp"
#include "streamlens/parallel.hpp"

namespace streamlens {

double ForestModel::predict(std::span<const double> x) const {
    double sum = 0.0;
    for (const auto& tree : trees) sum += predict_tree(tree, x);
    return sum / static_cast<double>(trees.size());
}

std::vector<std::size_t> bootstrap_sample(std::uint64_t seed, std::size_t tree_index, std::size_t n) {
    auto rng = RngStream::derived(seed, rng_tag::bootstrap, tree_index);
    std::vector<std::size_t> rows(n);
    for (auto& row : rows) row = rng.next_index(n);
    return rows;
}

ForestModel train_forest(const Matrix& X, const std::vector<Label>& y, const ForestParams& params,
                         std::uint64_t seed, unsigned workers) {
    if (X.empty() || X.size() != y.size()) {
        throw Error(Errc::dimension_mismatch, "feature matrix and labels must align and be non-empty");
    }
    ForestModel model;
    model.params = params;
    model.seed = seed;
    model.dimension = static_cast<int>(X[0].size());
    if (model.params.tree.features_per_split <= 0) {
        model.params.tree.features_per_split =
            std::max(1, static_cast<int>(std::sqrt(static_cast<double>(model.dimension))));
    }
    model.trees.resize(static_cast<std::size_t>(params.n_trees));
    parallel_for(model.trees.size(), workers, [&](std::size_t t) {
        auto rng = RngStream::derived(seed, rng_tag::feature_pick, t);
        model.trees[t] = train_tree_on(X, y, bootstrap_sample(seed, t, X.size()), model.params.tree, rng);
    });
    return model;
}

}  // namespace streamlens
