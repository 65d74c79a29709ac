#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "streamlens/rng.hpp"
#include "streamlens/splits.hpp"

namespace streamlens {

using ParamValue = std::variant<std::int64_t, double, std::string>;
using ParamMap = std::map<std::string, ParamValue>;

std::string param_to_string(const ParamValue& value);
std::string params_to_string(const ParamMap& params);

struct Distribution {
    enum class Kind { log_uniform, uniform_int, categorical };
    Kind kind = Kind::categorical;
    double lo = 0.0;
    double hi = 0.0;
    std::int64_t int_lo = 0;
    std::int64_t int_hi = 0;
    std::vector<ParamValue> choices;

    static Distribution log_uniform(double lo, double hi);
    static Distribution uniform_int(std::int64_t lo, std::int64_t hi);
    static Distribution categorical(std::vector<ParamValue> choices);

    ParamValue sample(RngStream& rng) const;
};

// Hyperparameter dimensions in a fixed order; trial t's assignment depends
// only on (seed, t).
struct SearchSpace {
    std::vector<std::pair<std::string, Distribution>> dimensions;

    ParamMap sample(RngStream& rng) const;
};

SearchSpace default_forest_space();
SearchSpace default_svm_space();

struct TrialResult {
    std::size_t trial = 0;
    ParamMap params;
    std::vector<double> split_scores;
    double mean_score = 0.0;  // -inf when the trial failed
    std::string error;
};

struct SearchOutcome {
    ParamMap best_params;
    std::size_t best_trial = 0;
    double best_score = 0.0;
    std::vector<TrialResult> trials;
};

// Trains and scores one (params, split) cell: fit on the train indices,
// score on the eval indices, seeded by fit_seed.
using TrialEvaluator = std::function<double(const ParamMap& params, const std::vector<std::size_t>& train,
                                            const std::vector<std::size_t>& eval, std::uint64_t fit_seed)>;

// Audit hook: sees every (trial, split) evaluation with its index sets.
using SearchObserver = std::function<void(std::size_t trial, std::size_t split,
                                          const std::vector<std::size_t>& train,
                                          const std::vector<std::size_t>& eval)>;

// Random-search cross-validation: n_trials sampled assignments, each scored
// on every split of the plan; best = argmax mean score, ties broken by the
// earliest trial. A failing trial records -inf and the diagnostic instead of
// aborting the search. Results are byte-identical for any worker count.
SearchOutcome random_search(const SplitPlan& plan, const SearchSpace& space, std::size_t n_trials,
                            const TrialEvaluator& evaluate_cell, std::uint64_t seed, unsigned workers = 1,
                            const SearchObserver& observer = {});

}  // namespace streamlens
