#pragma once

#include <filesystem>
#include <optional>

#include "streamlens/bundle.hpp"
#include "streamlens/config.hpp"
#include "streamlens/dataset.hpp"
#include "streamlens/extract.hpp"
#include "streamlens/report_io.hpp"

namespace streamlens {

// One manifest's worth of extracted and flattened videos. Per-file failures
// are contained: failed entries are dropped and reported as warnings.
struct LoadedDataset {
    std::vector<std::string> sources;
    std::vector<RawFeatureMap> maps;
    std::vector<Label> labels;  // aligned with maps when labeled
    bool labeled = false;
    std::vector<std::string> warnings;
};

LoadedDataset load_dataset(const DatasetManifest& manifest, bool require_labels, unsigned workers);

struct ExtractOutcome {
    std::size_t written = 0;
    std::vector<std::string> warnings;
};

// Writes one probe-report document per manifest entry into out_dir
// ("<rowindex>_<filename>.probe"). Individual failures are warnings; the
// call only fails outright when every entry fails.
ExtractOutcome run_extract(const DatasetManifest& manifest, const std::filesystem::path& out_dir,
                           unsigned workers);

struct TrainOutcome {
    ModelBundle bundle;
    std::vector<std::pair<std::string, TrialResult>> trial_rows;
    std::size_t n_train_rows = 0;       // budgeted training rows
    std::size_t n_validation_rows = 0;  // sequestered rows
};

// The two-stage training flow: sequester 25% for validation, budget-subsample
// the remainder (targets computed against the full manifest), fit the schema
// on the training rows, random-search forest and SVM, build the 4:1 ensemble,
// score all three on the sequestered set and keep the winner by the highest
// validation AP (ties favor the ensemble).
TrainOutcome train_pipeline(const LoadedDataset& data, const PipelineConfig& config, std::uint64_t seed,
                            std::optional<double> budget);

struct EvaluateOutcome {
    std::vector<NamedReport> reports;  // selected model first
    bool no_positives = false;
};

EvaluateOutcome evaluate_pipeline(const ModelBundle& bundle, const LoadedDataset& data);

// Encodes one already-extracted record against the bundle's schema and
// returns the manipulation probability of the selected model.
double predict_record(const ModelBundle& bundle, const DescriptorRecord& record);

struct BudgetRun {
    double budget = 0.0;
    std::size_t n_train_rows = 0;
    TrainOutcome train;
    EvaluateOutcome evaluation;
};

// cmd_train + cmd_evaluate per configured budget against a shared test
// manifest, mirroring the data-availability sweep.
std::vector<BudgetRun> budget_sweep(const LoadedDataset& train_data, const LoadedDataset& test_data,
                                    const PipelineConfig& config, std::uint64_t seed);

}  // namespace streamlens
