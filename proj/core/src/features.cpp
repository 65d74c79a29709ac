#include "streamlens/features.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <nlohmann/json.hpp>

#include "streamlens/error.hpp"

namespace streamlens {

namespace {

constexpr std::array<std::string_view, 13> kStreamFields = {
    "avg_frame_rate", "bit_rate", "channels", "codec_name", "codec_type", "duration",
    "height",         "level",    "nb_frames", "pix_fmt",   "profile",    "sample_rate",
    "width",
};

constexpr std::array<std::string_view, 6> kFormatFields = {
    "bit_rate", "duration", "format_name", "nb_streams", "size", "tags.encoder",
};

constexpr double kZeroMedianGuard = 1e-12;
constexpr double kNumericShare = 0.9;

double median_of_sorted(std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace

std::span<const std::string_view> canonical_stream_fields() { return kStreamFields; }
std::span<const std::string_view> canonical_format_fields() { return kFormatFields; }

std::string_view normalize_format_field(std::string_view name) {
    if (name == "duration_seconds") return "duration";
    if (name == "byte_size") return "size";
    if (name == "overall_bit_rate") return "bit_rate";
    if (name == "stream_count") return "nb_streams";
    return name;
}

RawFeatureMap flatten(const DescriptorRecord& record) {
    RawFeatureMap map;
    for (const auto& [name, value] : record.container_fields) {
        const auto canonical = normalize_format_field(name);
        if (std::find(kFormatFields.begin(), kFormatFields.end(), canonical) != kFormatFields.end()) {
            map.entries.emplace("format." + std::string(canonical), value);
        }
    }

    std::array<std::int64_t, 4> kind_counts{};  // video, audio, subtitle, data
    for (const auto& stream : record.streams) {
        const auto kind_index = static_cast<std::size_t>(stream.kind);
        const std::string scope =
            std::string(stream_kind_name(stream.kind)) + std::to_string(kind_counts[kind_index]++);
        for (const auto& [name, value] : stream.fields) {
            if (std::find(kStreamFields.begin(), kStreamFields.end(), name) != kStreamFields.end()) {
                map.entries.emplace(scope + "." + name, value);
            }
        }
    }
    map.entries.emplace("format.n_video_streams", kind_counts[0]);
    map.entries.emplace("format.n_audio_streams", kind_counts[1]);
    map.entries.emplace("format.n_subtitle_streams", kind_counts[2]);
    map.entries.emplace("format.n_data_streams", kind_counts[3]);
    return map;
}

FeatureSchema fit_schema(const std::vector<RawFeatureMap>& maps) {
    if (maps.empty()) {
        throw Error(Errc::empty_training_set, "no training maps");
    }

    // union of names -> present values, lexicographic by construction
    std::map<std::string, std::vector<const DescriptorValue*>> universe;
    for (const auto& map : maps) {
        for (const auto& [name, value] : map.entries) universe[name].push_back(&value);
    }

    FeatureSchema schema;
    schema.features.reserve(universe.size());
    for (auto& [name, values] : universe) {
        FeatureSpec spec;
        spec.name = name;
        std::vector<double> parsed;
        parsed.reserve(values.size());
        for (const auto* value : values) {
            if (const auto number = value_as_number(*value)) parsed.push_back(*number);
        }
        if (!values.empty() &&
            static_cast<double>(parsed.size()) >= kNumericShare * static_cast<double>(values.size())) {
            spec.kind = FeatureKind::numeric;
            spec.median = median_of_sorted(parsed);
        } else {
            spec.kind = FeatureKind::categorical;
            std::vector<std::string> categories;
            categories.reserve(values.size());
            for (const auto* value : values) categories.push_back(value_to_string(*value));
            std::sort(categories.begin(), categories.end());
            categories.erase(std::unique(categories.begin(), categories.end()), categories.end());
            for (std::size_t code = 0; code < categories.size(); ++code) {
                spec.categories.emplace(std::move(categories[code]), static_cast<double>(code));
            }
        }
        schema.features.push_back(std::move(spec));
    }
    return schema;
}

FeatureVector encode(const FeatureSchema& schema, const RawFeatureMap& map) {
    FeatureVector vec;
    vec.schema_version = schema.version;
    vec.values.reserve(schema.size());
    for (const auto& spec : schema.features) {
        const auto it = map.entries.find(spec.name);
        if (it == map.entries.end()) {
            vec.values.push_back(schema.sentinel);
            continue;
        }
        if (spec.kind == FeatureKind::numeric) {
            const auto number = value_as_number(it->second);
            if (!number) {
                vec.values.push_back(schema.sentinel);  // present but unparseable, e.g. "N/A"
                continue;
            }
            const double scaled = std::abs(spec.median) > kZeroMedianGuard ? *number / spec.median : *number;
            vec.values.push_back(std::isfinite(scaled) ? scaled : schema.sentinel);
        } else {
            const auto code = spec.categories.find(value_to_string(it->second));
            vec.values.push_back(code != spec.categories.end() ? code->second : schema.sentinel);
        }
    }
    return vec;
}

std::string schema_to_json(const FeatureSchema& schema) {
    nlohmann::json features = nlohmann::json::array();
    for (const auto& spec : schema.features) {
        nlohmann::json f{{"name", spec.name}};
        if (spec.kind == FeatureKind::numeric) {
            f["kind"] = "numeric";
            f["median"] = spec.median;
        } else {
            f["kind"] = "categorical";
            f["categories"] = spec.categories;
        }
        features.push_back(std::move(f));
    }
    const nlohmann::json doc{
        {"version", schema.version},
        {"sentinel", schema.sentinel},
        {"features", std::move(features)},
    };
    return doc.dump(2) + "\n";
}

FeatureSchema schema_from_json(std::string_view text) {
    const auto doc = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("features")) {
        throw Error(Errc::malformed_document, "not a feature schema document");
    }
    FeatureSchema schema;
    schema.version = doc.value("version", -1);
    if (schema.version != kSchemaVersion) {
        throw Error(Errc::schema_version_mismatch,
                    "schema version " + std::to_string(schema.version) + ", supported " +
                        std::to_string(kSchemaVersion));
    }
    schema.sentinel = doc.value("sentinel", kSentinel);
    for (const auto& f : doc.at("features")) {
        FeatureSpec spec;
        spec.name = f.at("name").get<std::string>();
        if (f.at("kind").get<std::string>() == "numeric") {
            spec.kind = FeatureKind::numeric;
            spec.median = f.at("median").get<double>();
        } else {
            spec.kind = FeatureKind::categorical;
            for (const auto& [key, code] : f.at("categories").items()) {
                spec.categories.emplace(key, code.get<double>());
            }
        }
        schema.features.push_back(std::move(spec));
    }
    return schema;
}

}  // namespace streamlens
