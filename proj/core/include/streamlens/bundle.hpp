#pragma once

#include <filesystem>
#include <optional>

#include "streamlens/ensemble.hpp"
#include "streamlens/features.hpp"
#include "streamlens/search.hpp"

namespace streamlens {

inline constexpr int kBundleFormatVersion = 1;

enum class ModelKind { forest, svm, ensemble };

const char* model_kind_name(ModelKind kind);

struct SearchSummary {
    ParamMap best_params;
    std::size_t best_trial = 0;
    double best_score = 0.0;
};

struct ValidationScores {
    double f1 = 0.0;
    double pr_auc = 0.0;
    double ap = 0.0;
};

// Everything needed to reproduce and audit a training run.
struct TrainProtocol {
    std::uint64_t seed = 0;
    std::optional<double> budget;
    std::size_t trials = 0;
    int n_splits = 0;
    double eval_fraction = 0.0;
    std::string metric;
    SearchSummary forest_search;
    SearchSummary svm_search;
    std::map<std::string, ValidationScores> validation;
};

// The deployable artifact: schema + trained members + the validated winner.
// Serialization is canonical JSON and round-trips bit-exactly.
struct ModelBundle {
    int format_version = kBundleFormatVersion;
    FeatureSchema schema;
    ModelKind selected = ModelKind::ensemble;
    EnsembleModel ensemble;
    TrainProtocol protocol;

    double predict(std::span<const double> x) const;
};

std::string bundle_to_json(const ModelBundle& bundle);
ModelBundle bundle_from_json(std::string_view text);

void save_bundle(const ModelBundle& bundle, const std::filesystem::path& path);
ModelBundle load_bundle(const std::filesystem::path& path);

}  // namespace streamlens
