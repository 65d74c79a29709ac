#include "streamlens/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "streamlens/error.hpp"

namespace streamlens {

namespace {

using nlohmann::json;

constexpr double kBudgetChoices[] = {0.10, 0.25, 0.50, 0.75};

ParamValue param_from_json(const json& v) {
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_unsigned()) return static_cast<std::int64_t>(v.get<std::uint64_t>());
    if (v.is_number_float()) return v.get<double>();
    if (v.is_string()) return v.get<std::string>();
    throw Error(Errc::bad_config, "unsupported categorical choice: " + v.dump());
}

json param_to_json(const ParamValue& v) {
    switch (v.index()) {
        case 0: return std::get<std::int64_t>(v);
        case 1: return std::get<double>(v);
        default: return std::get<std::string>(v);
    }
}

Distribution distribution_from_json(const std::string& name, const json& spec) {
    if (!spec.is_object() || spec.size() != 1) {
        throw Error(Errc::bad_config, "dimension \"" + name + "\" must hold exactly one distribution");
    }
    const auto& [kind, args] = *spec.items().begin();
    if (kind == "log_uniform") {
        return Distribution::log_uniform(args.at(0).get<double>(), args.at(1).get<double>());
    }
    if (kind == "uniform_int") {
        return Distribution::uniform_int(args.at(0).get<std::int64_t>(), args.at(1).get<std::int64_t>());
    }
    if (kind == "categorical") {
        std::vector<ParamValue> choices;
        for (const auto& choice : args) choices.push_back(param_from_json(choice));
        return Distribution::categorical(std::move(choices));
    }
    throw Error(Errc::bad_config, "unknown distribution \"" + kind + "\" for \"" + name + "\"");
}

SearchSpace space_from_json(const json& obj) {
    SearchSpace space;
    for (const auto& [name, spec] : obj.items()) {
        space.dimensions.emplace_back(name, distribution_from_json(name, spec));
    }
    return space;
}

json space_to_json(const SearchSpace& space) {
    json obj = json::object();
    for (const auto& [name, dist] : space.dimensions) {
        switch (dist.kind) {
            case Distribution::Kind::log_uniform:
                obj[name] = {{"log_uniform", {dist.lo, dist.hi}}};
                break;
            case Distribution::Kind::uniform_int:
                obj[name] = {{"uniform_int", {dist.int_lo, dist.int_hi}}};
                break;
            case Distribution::Kind::categorical: {
                json choices = json::array();
                for (const auto& choice : dist.choices) choices.push_back(param_to_json(choice));
                obj[name] = {{"categorical", std::move(choices)}};
                break;
            }
        }
    }
    return obj;
}

void validate_budgets(const std::vector<double>& budgets) {
    for (const auto budget : budgets) {
        bool known = false;
        for (const auto choice : kBudgetChoices) {
            if (std::abs(budget - choice) < 1e-9) known = true;
        }
        if (!known) {
            throw Error(Errc::bad_config,
                        "budget " + std::to_string(budget) + " not in {0.10, 0.25, 0.50, 0.75}");
        }
    }
}

}  // namespace

PipelineConfig config_from_json(std::string_view text) {
    const auto doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw Error(Errc::bad_config, "config is not a structured document");
    }
    PipelineConfig config;
    config.n_splits = doc.value("n_splits", config.n_splits);
    config.eval_fraction = doc.value("eval_fraction", config.eval_fraction);
    config.trials = doc.value("trials", config.trials);
    config.metric = doc.value("metric", config.metric);
    config.workers = doc.value("workers", config.workers);
    if (doc.contains("budgets")) {
        config.budgets = doc.at("budgets").get<std::vector<double>>();
    }
    if (doc.contains("forest_space")) config.forest_space = space_from_json(doc.at("forest_space"));
    if (doc.contains("svm_space")) config.svm_space = space_from_json(doc.at("svm_space"));

    if (config.n_splits < 1) throw Error(Errc::bad_config, "n_splits must be >= 1");
    if (!(config.eval_fraction > 0.0 && config.eval_fraction < 1.0)) {
        throw Error(Errc::bad_config, "eval_fraction must lie in (0, 1)");
    }
    if (config.trials < 1) throw Error(Errc::bad_config, "trials must be >= 1");
    if (config.metric != "average_precision" && config.metric != "f1") {
        throw Error(Errc::bad_config, "metric must be average_precision or f1");
    }
    validate_budgets(config.budgets);
    return config;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::io_error, "cannot open config " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return config_from_json(buffer.str());
}

std::string config_to_json(const PipelineConfig& config) {
    const json doc{
        {"n_splits", config.n_splits},
        {"eval_fraction", config.eval_fraction},
        {"trials", config.trials},
        {"metric", config.metric},
        {"budgets", config.budgets},
        {"workers", config.workers},
        {"forest_space", space_to_json(config.forest_space)},
        {"svm_space", space_to_json(config.svm_space)},
    };
    return doc.dump(2) + "\n";
}

}  // namespace streamlens
