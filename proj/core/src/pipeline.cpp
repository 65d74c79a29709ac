#include "streamlens/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "streamlens/error.hpp"
#include "streamlens/io_util.hpp"
#include "streamlens/parallel.hpp"
#include "streamlens/record_json.hpp"

namespace streamlens {

namespace {

constexpr std::uint64_t kForestSearchTag = 0x66736561;
constexpr std::uint64_t kSvmSearchTag = 0x73736561;
constexpr std::uint64_t kFinalFitTag = 0x66696e61;

struct ExtractedEntry {
    bool ok = false;
    DescriptorRecord record;
    std::string error;
};

std::vector<ExtractedEntry> extract_all(const DatasetManifest& manifest, unsigned workers) {
    std::vector<ExtractedEntry> results(manifest.entries.size());
    parallel_for(manifest.entries.size(), workers, [&](std::size_t i) {
        try {
            results[i].record = extract(manifest.resolve(manifest.entries[i]));
            results[i].record.source_id = manifest.entries[i].path;
            results[i].ok = true;
        } catch (const std::exception& ex) {
            results[i].error = manifest.entries[i].path + ": " + ex.what();
        }
    });
    return results;
}

int resolve_features_per_split(const ParamMap& params, int dimension) {
    const auto it = params.find("features_per_split");
    if (it == params.end()) return 0;
    if (const auto* mode = std::get_if<std::string>(&it->second)) {
        if (*mode == "sqrt") {
            return std::max(1, static_cast<int>(std::sqrt(static_cast<double>(dimension))));
        }
        if (*mode == "log2") {
            return std::max(1, static_cast<int>(std::log2(std::max(2.0, static_cast<double>(dimension)))));
        }
        return dimension;  // "all"
    }
    return static_cast<int>(std::get<std::int64_t>(it->second));
}

std::int64_t int_param(const ParamMap& params, const std::string& name, std::int64_t fallback) {
    const auto it = params.find(name);
    if (it == params.end()) return fallback;
    if (const auto* i = std::get_if<std::int64_t>(&it->second)) return *i;
    return static_cast<std::int64_t>(std::get<double>(it->second));
}

double double_param(const ParamMap& params, const std::string& name, double fallback) {
    const auto it = params.find(name);
    if (it == params.end()) return fallback;
    if (const auto* d = std::get_if<double>(&it->second)) return *d;
    return static_cast<double>(std::get<std::int64_t>(it->second));
}

ForestParams forest_params_from(const ParamMap& params, int dimension) {
    ForestParams p;
    p.n_trees = static_cast<int>(int_param(params, "n_trees", p.n_trees));
    p.tree.max_depth = static_cast<int>(int_param(params, "max_depth", 0));
    p.tree.min_samples_leaf = static_cast<int>(int_param(params, "min_samples_leaf", 1));
    p.tree.features_per_split = resolve_features_per_split(params, dimension);
    return p;
}

SvmParams svm_params_from(const ParamMap& params) {
    SvmParams p;
    p.C = double_param(params, "C", p.C);
    p.gamma = double_param(params, "gamma", p.gamma);
    return p;
}

double score_set(const ScoredSet& set, const std::string& metric) {
    return metric == "f1" ? f1_score(set) : average_precision(set);
}

Matrix gather_rows(const Matrix& x, const std::vector<std::size_t>& rows) {
    Matrix out;
    out.reserve(rows.size());
    for (const auto r : rows) out.push_back(x[r]);
    return out;
}

std::vector<Label> gather_labels(const std::vector<Label>& y, const std::vector<std::size_t>& rows) {
    std::vector<Label> out;
    out.reserve(rows.size());
    for (const auto r : rows) out.push_back(y[r]);
    return out;
}

EvaluationReport report_for(const std::vector<double>& scores, const std::vector<Label>& labels) {
    return evaluate(ScoredSet{scores, labels});
}

template <typename Model>
std::vector<double> predict_rows(const Model& model, const Matrix& x) {
    std::vector<double> scores(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) scores[i] = model.predict(x[i]);
    return scores;
}

}  // namespace

LoadedDataset load_dataset(const DatasetManifest& manifest, bool require_labels, unsigned workers) {
    if (manifest.entries.empty()) {
        throw Error(Errc::bad_manifest, "empty manifest");
    }
    LoadedDataset data;
    data.labeled = true;
    const auto extracted = extract_all(manifest, workers);
    for (std::size_t i = 0; i < extracted.size(); ++i) {
        if (!extracted[i].ok) {
            data.warnings.push_back(extracted[i].error);
            continue;
        }
        const auto& entry = manifest.entries[i];
        if (!entry.label) {
            if (require_labels) {
                throw Error(Errc::bad_manifest, "unlabeled entry: " + entry.path);
            }
            data.labeled = false;
        }
        data.sources.push_back(entry.path);
        data.maps.push_back(flatten(extracted[i].record));
        data.labels.push_back(entry.label.value_or(Label::pristine));
    }
    if (data.maps.empty()) {
        throw Error(Errc::bad_manifest, "no manifest entry could be extracted");
    }
    return data;
}

ExtractOutcome run_extract(const DatasetManifest& manifest, const std::filesystem::path& out_dir,
                           unsigned workers) {
    if (manifest.entries.empty()) {
        throw Error(Errc::bad_manifest, "empty manifest");
    }
    const auto extracted = extract_all(manifest, workers);
    ExtractOutcome outcome;
    for (std::size_t i = 0; i < extracted.size(); ++i) {
        if (!extracted[i].ok) {
            outcome.warnings.push_back(extracted[i].error);
            continue;
        }
        char prefix[16];
        std::snprintf(prefix, sizeof(prefix), "%04zu_", i);
        const auto name = prefix + std::filesystem::path(manifest.entries[i].path).filename().string() +
                          ".probe";
        write_file_atomic(out_dir / name, record_to_probe_json(extracted[i].record));
        ++outcome.written;
    }
    if (outcome.written == 0) {
        throw Error(Errc::unsupported_format, "all " + std::to_string(manifest.entries.size()) +
                                                  " manifest entries failed to extract");
    }
    return outcome;
}

TrainOutcome train_pipeline(const LoadedDataset& data, const PipelineConfig& config, std::uint64_t seed,
                            std::optional<double> budget) {
    if (!data.labeled) {
        throw Error(Errc::bad_manifest, "training requires a fully labeled manifest");
    }
    if (budget) {
        bool known = false;
        for (const double choice : {0.10, 0.25, 0.50, 0.75}) {
            if (std::abs(*budget - choice) < 1e-9) known = true;
        }
        if (!known) {
            throw Error(Errc::bad_config,
                        "budget " + std::to_string(*budget) + " not in {0.10, 0.25, 0.50, 0.75}");
        }
    }

    const auto [remainder, validation] = sequester_validation(data.labels, seed);
    const auto train_rows = budget
                                ? subsample_budget_from_pool(data.labels, remainder, *budget, seed)
                                : remainder;

    // the schema sees only the budgeted training rows
    std::vector<RawFeatureMap> train_maps;
    train_maps.reserve(train_rows.size());
    for (const auto r : train_rows) train_maps.push_back(data.maps[r]);
    auto schema = fit_schema(train_maps);
    const int dimension = static_cast<int>(schema.size());

    Matrix train_x;
    train_x.reserve(train_rows.size());
    for (const auto& map : train_maps) train_x.push_back(encode(schema, map).values);
    const auto train_y = gather_labels(data.labels, train_rows);

    const auto plan = stratified_shuffle_split(train_y, config.n_splits, config.eval_fraction,
                                               derive_seed(seed, rng_tag::cv_split));
    const unsigned workers = resolve_workers(config.workers);

    const auto forest_eval = [&](const ParamMap& params, const std::vector<std::size_t>& fit_rows,
                                 const std::vector<std::size_t>& eval_rows, std::uint64_t fit_seed) {
        const auto model = train_forest(gather_rows(train_x, fit_rows), gather_labels(train_y, fit_rows),
                                        forest_params_from(params, dimension), fit_seed);
        ScoredSet set{predict_rows(model, gather_rows(train_x, eval_rows)),
                      gather_labels(train_y, eval_rows)};
        return score_set(set, config.metric);
    };
    const auto svm_eval = [&](const ParamMap& params, const std::vector<std::size_t>& fit_rows,
                              const std::vector<std::size_t>& eval_rows, std::uint64_t fit_seed) {
        const auto model = train_svm(gather_rows(train_x, fit_rows), gather_labels(train_y, fit_rows),
                                     svm_params_from(params), fit_seed);
        ScoredSet set{predict_rows(model, gather_rows(train_x, eval_rows)),
                      gather_labels(train_y, eval_rows)};
        return score_set(set, config.metric);
    };

    const auto forest_outcome = random_search(plan, config.forest_space, config.trials, forest_eval,
                                              derive_seed(seed, kForestSearchTag), workers);
    const auto svm_outcome = random_search(plan, config.svm_space, config.trials, svm_eval,
                                           derive_seed(seed, kSvmSearchTag), workers);

    TrainOutcome outcome;
    outcome.n_train_rows = train_rows.size();
    outcome.n_validation_rows = validation.size();

    ModelBundle& bundle = outcome.bundle;
    bundle.schema = std::move(schema);
    bundle.ensemble.forest =
        train_forest(train_x, train_y, forest_params_from(forest_outcome.best_params, dimension),
                     derive_seed(seed, kFinalFitTag, 0), workers);
    bundle.ensemble.svm = train_svm(train_x, train_y, svm_params_from(svm_outcome.best_params),
                                    derive_seed(seed, kFinalFitTag, 1));

    // validate all three detectors on the sequestered rows
    Matrix validation_x;
    validation_x.reserve(validation.size());
    for (const auto r : validation) validation_x.push_back(encode(bundle.schema, data.maps[r]).values);
    const auto validation_y = gather_labels(data.labels, validation);

    const auto forest_report = report_for(predict_rows(bundle.ensemble.forest, validation_x), validation_y);
    const auto svm_report = report_for(predict_rows(bundle.ensemble.svm, validation_x), validation_y);
    const auto ensemble_report = report_for(predict_rows(bundle.ensemble, validation_x), validation_y);

    bundle.protocol.validation["forest"] = {forest_report.f1, forest_report.pr_auc, forest_report.ap};
    bundle.protocol.validation["svm"] = {svm_report.f1, svm_report.pr_auc, svm_report.ap};
    bundle.protocol.validation["ensemble"] = {ensemble_report.f1, ensemble_report.pr_auc,
                                              ensemble_report.ap};

    // highest validation AP wins; ties favor the ensemble
    if (ensemble_report.ap >= forest_report.ap && ensemble_report.ap >= svm_report.ap) {
        bundle.selected = ModelKind::ensemble;
    } else if (forest_report.ap >= svm_report.ap) {
        bundle.selected = ModelKind::forest;
    } else {
        bundle.selected = ModelKind::svm;
    }

    bundle.protocol.seed = seed;
    bundle.protocol.budget = budget;
    bundle.protocol.trials = config.trials;
    bundle.protocol.n_splits = config.n_splits;
    bundle.protocol.eval_fraction = config.eval_fraction;
    bundle.protocol.metric = config.metric;
    bundle.protocol.forest_search = {forest_outcome.best_params, forest_outcome.best_trial,
                                     forest_outcome.best_score};
    bundle.protocol.svm_search = {svm_outcome.best_params, svm_outcome.best_trial,
                                  svm_outcome.best_score};

    outcome.trial_rows.reserve(forest_outcome.trials.size() + svm_outcome.trials.size());
    for (const auto& trial : forest_outcome.trials) outcome.trial_rows.emplace_back("forest", trial);
    for (const auto& trial : svm_outcome.trials) outcome.trial_rows.emplace_back("svm", trial);
    return outcome;
}

EvaluateOutcome evaluate_pipeline(const ModelBundle& bundle, const LoadedDataset& data) {
    Matrix x;
    x.reserve(data.maps.size());
    for (const auto& map : data.maps) x.push_back(encode(bundle.schema, map).values);

    EvaluateOutcome outcome;
    const auto push = [&](const std::string& name, const std::vector<double>& scores) {
        NamedReport entry;
        entry.name = name;
        try {
            entry.report = evaluate(ScoredSet{scores, data.labels});
        } catch (const Error& err) {
            if (err.code() != Errc::no_positives) throw;
            outcome.no_positives = true;
            entry.has_curve = false;
            entry.report.f1 = f1_score(ScoredSet{scores, data.labels});
            entry.report.n_total = static_cast<std::int64_t>(data.labels.size());
            entry.report.n_pos = 0;
            entry.report.baseline = 0.0;
        }
        outcome.reports.push_back(std::move(entry));
    };

    push(model_kind_name(bundle.selected), predict_rows(bundle, x));
    if (bundle.selected == ModelKind::ensemble) {
        push("forest", predict_rows(bundle.ensemble.forest, x));
        push("svm", predict_rows(bundle.ensemble.svm, x));
    }
    return outcome;
}

double predict_record(const ModelBundle& bundle, const DescriptorRecord& record) {
    return bundle.predict(encode(bundle.schema, flatten(record)).values);
}

std::vector<BudgetRun> budget_sweep(const LoadedDataset& train_data, const LoadedDataset& test_data,
                                    const PipelineConfig& config, std::uint64_t seed) {
    std::vector<BudgetRun> runs;
    runs.reserve(config.budgets.size());
    for (const auto budget : config.budgets) {
        BudgetRun run;
        run.budget = budget;
        run.train = train_pipeline(train_data, config, seed, budget);
        run.n_train_rows = run.train.n_train_rows;
        run.evaluation = evaluate_pipeline(run.train.bundle, test_data);
        runs.push_back(std::move(run));
    }
    return runs;
}

}  // namespace streamlens
