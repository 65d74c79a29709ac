#include "streamlens/bundle.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "streamlens/error.hpp"
#include "streamlens/io_util.hpp"

namespace streamlens {

namespace {

using nlohmann::json;

json params_to_json(const ParamMap& params) {
    json obj = json::object();
    for (const auto& [name, value] : params) {
        switch (value.index()) {
            case 0: obj[name] = std::get<std::int64_t>(value); break;
            case 1: obj[name] = std::get<double>(value); break;
            default: obj[name] = std::get<std::string>(value); break;
        }
    }
    return obj;
}

ParamMap params_from_json(const json& obj) {
    ParamMap params;
    for (const auto& [name, value] : obj.items()) {
        if (value.is_number_integer()) {
            params.emplace(name, value.get<std::int64_t>());
        } else if (value.is_number_unsigned()) {
            params.emplace(name, static_cast<std::int64_t>(value.get<std::uint64_t>()));
        } else if (value.is_number_float()) {
            params.emplace(name, value.get<double>());
        } else {
            params.emplace(name, value.get<std::string>());
        }
    }
    return params;
}

json tree_to_json(const Tree& tree) {
    json nodes = json::array();
    for (const auto& node : tree.nodes) {
        nodes.push_back({node.feature_index, node.threshold, node.left, node.right,
                         node.positive_fraction, node.sample_count});
    }
    return {{"nodes", std::move(nodes)}};
}

Tree tree_from_json(const json& obj, int dimension) {
    Tree tree;
    tree.dimension = dimension;
    for (const auto& row : obj.at("nodes")) {
        TreeNode node;
        node.feature_index = row.at(0).get<std::int32_t>();
        node.threshold = row.at(1).get<double>();
        node.left = row.at(2).get<std::int32_t>();
        node.right = row.at(3).get<std::int32_t>();
        node.positive_fraction = row.at(4).get<double>();
        node.sample_count = row.at(5).get<std::int64_t>();
        tree.nodes.push_back(node);
    }
    return tree;
}

json forest_to_json(const ForestModel& model) {
    json trees = json::array();
    for (const auto& tree : model.trees) trees.push_back(tree_to_json(tree));
    return {
        {"seed", model.seed},
        {"dimension", model.dimension},
        {"params",
         {{"n_trees", model.params.n_trees},
          {"max_depth", model.params.tree.max_depth},
          {"min_samples_leaf", model.params.tree.min_samples_leaf},
          {"features_per_split", model.params.tree.features_per_split}}},
        {"trees", std::move(trees)},
    };
}

ForestModel forest_from_json(const json& obj) {
    ForestModel model;
    model.seed = obj.at("seed").get<std::uint64_t>();
    model.dimension = obj.at("dimension").get<int>();
    const auto& params = obj.at("params");
    model.params.n_trees = params.at("n_trees").get<int>();
    model.params.tree.max_depth = params.at("max_depth").get<int>();
    model.params.tree.min_samples_leaf = params.at("min_samples_leaf").get<int>();
    model.params.tree.features_per_split = params.at("features_per_split").get<int>();
    for (const auto& tree : obj.at("trees")) {
        model.trees.push_back(tree_from_json(tree, model.dimension));
    }
    return model;
}

json svm_to_json(const SvmModel& model) {
    return {
        {"seed", model.seed},
        {"dimension", model.dimension},
        {"C", model.C},
        {"gamma", model.gamma},
        {"bias", model.bias},
        {"platt", {model.platt_a, model.platt_b}},
        {"converged", model.converged},
        {"alphas", model.alphas},
        {"support_vectors", model.support_vectors},
    };
}

SvmModel svm_from_json(const json& obj) {
    SvmModel model;
    model.seed = obj.at("seed").get<std::uint64_t>();
    model.dimension = obj.at("dimension").get<int>();
    model.C = obj.at("C").get<double>();
    model.gamma = obj.at("gamma").get<double>();
    model.bias = obj.at("bias").get<double>();
    model.platt_a = obj.at("platt").at(0).get<double>();
    model.platt_b = obj.at("platt").at(1).get<double>();
    model.converged = obj.at("converged").get<bool>();
    model.alphas = obj.at("alphas").get<std::vector<double>>();
    model.support_vectors = obj.at("support_vectors").get<Matrix>();
    return model;
}

json search_summary_to_json(const SearchSummary& summary) {
    return {
        {"best_trial", summary.best_trial},
        {"best_score", summary.best_score},
        {"params", params_to_json(summary.best_params)},
    };
}

SearchSummary search_summary_from_json(const json& obj) {
    SearchSummary summary;
    summary.best_trial = obj.at("best_trial").get<std::size_t>();
    summary.best_score = obj.at("best_score").get<double>();
    summary.best_params = params_from_json(obj.at("params"));
    return summary;
}

json validation_to_json(const std::map<std::string, ValidationScores>& validation) {
    json obj = json::object();
    for (const auto& [name, scores] : validation) {
        obj[name] = {{"f1", scores.f1}, {"pr_auc", scores.pr_auc}, {"ap", scores.ap}};
    }
    return obj;
}

}  // namespace

const char* model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::forest: return "forest";
        case ModelKind::svm: return "svm";
        case ModelKind::ensemble: return "ensemble";
    }
    return "ensemble";
}

double ModelBundle::predict(std::span<const double> x) const {
    switch (selected) {
        case ModelKind::forest: return ensemble.forest.predict(x);
        case ModelKind::svm: return ensemble.svm.predict(x);
        case ModelKind::ensemble: return ensemble.predict(x);
    }
    return ensemble.predict(x);
}

std::string bundle_to_json(const ModelBundle& bundle) {
    json protocol{
        {"seed", bundle.protocol.seed},
        {"trials", bundle.protocol.trials},
        {"n_splits", bundle.protocol.n_splits},
        {"eval_fraction", bundle.protocol.eval_fraction},
        {"metric", bundle.protocol.metric},
        {"search",
         {{"forest", search_summary_to_json(bundle.protocol.forest_search)},
          {"svm", search_summary_to_json(bundle.protocol.svm_search)}}},
        {"validation", validation_to_json(bundle.protocol.validation)},
    };
    if (bundle.protocol.budget) {
        protocol["budget"] = *bundle.protocol.budget;
    } else {
        protocol["budget"] = nullptr;
    }

    const json doc{
        {"format_version", bundle.format_version},
        {"schema", json::parse(schema_to_json(bundle.schema))},
        {"model",
         {{"selected", model_kind_name(bundle.selected)},
          {"weights", {{"forest", bundle.ensemble.forest_weight}, {"svm", bundle.ensemble.svm_weight}}},
          {"forest", forest_to_json(bundle.ensemble.forest)},
          {"svm", svm_to_json(bundle.ensemble.svm)}}},
        {"protocol", std::move(protocol)},
    };
    return doc.dump(2) + "\n";
}

ModelBundle bundle_from_json(std::string_view text) {
    const auto doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw Error(Errc::malformed_document, "not a model bundle document");
    }
    ModelBundle bundle;
    bundle.format_version = doc.value("format_version", -1);
    if (bundle.format_version != kBundleFormatVersion) {
        throw Error(Errc::schema_version_mismatch,
                    "bundle format version " + std::to_string(bundle.format_version) + ", supported " +
                        std::to_string(kBundleFormatVersion));
    }
    bundle.schema = schema_from_json(doc.at("schema").dump());

    const auto& model = doc.at("model");
    const auto selected = model.at("selected").get<std::string>();
    if (selected == "forest") {
        bundle.selected = ModelKind::forest;
    } else if (selected == "svm") {
        bundle.selected = ModelKind::svm;
    } else if (selected == "ensemble") {
        bundle.selected = ModelKind::ensemble;
    } else {
        throw Error(Errc::malformed_document, "unknown selected model \"" + selected + "\"");
    }
    bundle.ensemble.forest_weight = model.at("weights").at("forest").get<double>();
    bundle.ensemble.svm_weight = model.at("weights").at("svm").get<double>();
    bundle.ensemble.forest = forest_from_json(model.at("forest"));
    bundle.ensemble.svm = svm_from_json(model.at("svm"));

    const auto& protocol = doc.at("protocol");
    bundle.protocol.seed = protocol.at("seed").get<std::uint64_t>();
    if (!protocol.at("budget").is_null()) {
        bundle.protocol.budget = protocol.at("budget").get<double>();
    }
    bundle.protocol.trials = protocol.at("trials").get<std::size_t>();
    bundle.protocol.n_splits = protocol.at("n_splits").get<int>();
    bundle.protocol.eval_fraction = protocol.at("eval_fraction").get<double>();
    bundle.protocol.metric = protocol.at("metric").get<std::string>();
    bundle.protocol.forest_search = search_summary_from_json(protocol.at("search").at("forest"));
    bundle.protocol.svm_search = search_summary_from_json(protocol.at("search").at("svm"));
    for (const auto& [name, scores] : protocol.at("validation").items()) {
        ValidationScores v;
        v.f1 = scores.at("f1").get<double>();
        v.pr_auc = scores.at("pr_auc").get<double>();
        v.ap = scores.at("ap").get<double>();
        bundle.protocol.validation.emplace(name, v);
    }
    return bundle;
}

void save_bundle(const ModelBundle& bundle, const std::filesystem::path& path) {
    write_file_atomic(path, bundle_to_json(bundle));
}

ModelBundle load_bundle(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::io_error, "cannot open bundle " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return bundle_from_json(buffer.str());
}

}  // namespace streamlens
