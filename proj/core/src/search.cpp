#include "streamlens/search.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "streamlens/error.hpp"
#include "streamlens/parallel.hpp"

namespace streamlens {

namespace {

constexpr std::uint64_t kFitTag = 0x666974;

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace

std::string param_to_string(const ParamValue& value) {
    switch (value.index()) {
        case 0: return std::to_string(std::get<std::int64_t>(value));
        case 1: return format_double(std::get<double>(value));
        default: return std::get<std::string>(value);
    }
}

std::string params_to_string(const ParamMap& params) {
    std::string out;
    for (const auto& [name, value] : params) {
        if (!out.empty()) out += ";";
        out += name + "=" + param_to_string(value);
    }
    return out;
}

Distribution Distribution::log_uniform(double lo, double hi) {
    if (!(lo > 0.0) || !(lo < hi)) {
        throw Error(Errc::bad_config, "log-uniform bounds must satisfy 0 < lo < hi");
    }
    Distribution d;
    d.kind = Kind::log_uniform;
    d.lo = lo;
    d.hi = hi;
    return d;
}

Distribution Distribution::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo >= hi) {
        throw Error(Errc::bad_config, "uniform-int bounds must satisfy lo < hi");
    }
    Distribution d;
    d.kind = Kind::uniform_int;
    d.int_lo = lo;
    d.int_hi = hi;
    return d;
}

Distribution Distribution::categorical(std::vector<ParamValue> choices) {
    if (choices.empty()) {
        throw Error(Errc::bad_config, "categorical distribution needs at least one choice");
    }
    Distribution d;
    d.kind = Kind::categorical;
    d.choices = std::move(choices);
    return d;
}

ParamValue Distribution::sample(RngStream& rng) const {
    switch (kind) {
        case Kind::log_uniform: return rng.log_uniform(lo, hi);
        case Kind::uniform_int: return rng.next_int(int_lo, int_hi);
        case Kind::categorical: return choices[rng.next_index(choices.size())];
    }
    return ParamValue{};
}

ParamMap SearchSpace::sample(RngStream& rng) const {
    ParamMap out;
    for (const auto& [name, dist] : dimensions) {
        out.emplace(name, dist.sample(rng));
    }
    return out;
}

SearchSpace default_forest_space() {
    SearchSpace space;
    space.dimensions.emplace_back("n_trees", Distribution::uniform_int(10, 300));
    std::vector<ParamValue> depths{std::int64_t{0}};  // 0 = unlimited
    for (std::int64_t d = 2; d <= 32; ++d) depths.emplace_back(d);
    space.dimensions.emplace_back("max_depth", Distribution::categorical(std::move(depths)));
    space.dimensions.emplace_back("min_samples_leaf", Distribution::uniform_int(1, 8));
    space.dimensions.emplace_back(
        "features_per_split",
        Distribution::categorical({std::string("sqrt"), std::string("log2"), std::string("all")}));
    return space;
}

SearchSpace default_svm_space() {
    SearchSpace space;
    space.dimensions.emplace_back("C", Distribution::log_uniform(1e-2, 1e3));
    space.dimensions.emplace_back("gamma", Distribution::log_uniform(1e-4, 1e1));
    return space;
}

SearchOutcome random_search(const SplitPlan& plan, const SearchSpace& space, std::size_t n_trials,
                            const TrialEvaluator& evaluate_cell, std::uint64_t seed, unsigned workers,
                            const SearchObserver& observer) {
    if (n_trials == 0) {
        throw Error(Errc::bad_config, "random search needs at least one trial");
    }

    SearchOutcome outcome;
    outcome.trials.resize(n_trials);

    parallel_for(n_trials, workers, [&](std::size_t t) {
        TrialResult& result = outcome.trials[t];
        result.trial = t;
        auto trial_rng = RngStream::derived(seed, rng_tag::trial, t);
        result.params = space.sample(trial_rng);
        const std::uint64_t model_seed = derive_seed(seed, rng_tag::model, t);

        result.split_scores.reserve(plan.splits.size());
        double sum = 0.0;
        try {
            for (std::size_t s = 0; s < plan.splits.size(); ++s) {
                const auto& split = plan.splits[s];
                if (observer) observer(t, s, split.train_indices, split.eval_indices);
                const double score = evaluate_cell(result.params, split.train_indices, split.eval_indices,
                                                   derive_seed(model_seed, kFitTag, s));
                result.split_scores.push_back(score);
                sum += score;
            }
            result.mean_score = sum / static_cast<double>(plan.splits.size());
            if (std::isnan(result.mean_score)) {
                result.mean_score = -std::numeric_limits<double>::infinity();
                result.error = "score was NaN";
            }
        } catch (const std::exception& ex) {
            result.mean_score = -std::numeric_limits<double>::infinity();
            result.error = ex.what();
        }
    });

    outcome.best_trial = 0;
    outcome.best_score = -std::numeric_limits<double>::infinity();
    for (const auto& trial : outcome.trials) {
        if (trial.mean_score > outcome.best_score) {
            outcome.best_score = trial.mean_score;
            outcome.best_trial = trial.trial;
        }
    }
    outcome.best_params = outcome.trials[outcome.best_trial].params;
    return outcome;
}

}  // namespace streamlens
