#pragma once

#include <filesystem>

#include "streamlens/search.hpp"

namespace streamlens {

// The training protocol knobs. Defaults follow the evaluation protocol this
// detector targets: 10-split stratified shuffle CV with 1,000 random-search
// trials; desk-scale runs override `trials` via config or --trials.
struct PipelineConfig {
    int n_splits = 10;
    double eval_fraction = 0.25;
    std::size_t trials = 1000;
    std::string metric = "average_precision";  // or "f1"
    std::vector<double> budgets = {0.10, 0.25, 0.50, 0.75};
    unsigned workers = 0;  // 0 = hardware concurrency
    SearchSpace forest_space = default_forest_space();
    SearchSpace svm_space = default_svm_space();
};

PipelineConfig config_from_json(std::string_view text);
PipelineConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const PipelineConfig& config);

}  // namespace streamlens
