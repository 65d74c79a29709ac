#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "streamlens/descriptor.hpp"

namespace streamlens {

enum class Label : int { pristine = 0, manipulated = 1 };

// Flattened view of one record: "<scope>.<field>" where scope is "format" or
// "<kind><k>" ("video0", "audio1", ...). Sorted keys make map identity
// independent of insertion order.
struct RawFeatureMap {
    std::map<std::string, DescriptorValue> entries;
};

enum class FeatureKind { numeric, categorical };

struct FeatureSpec {
    std::string name;
    FeatureKind kind = FeatureKind::numeric;
    double median = 0.0;                       // numeric features only
    std::map<std::string, double> categories;  // categorical features only
};

inline constexpr double kSentinel = -1.0;
inline constexpr int kSchemaVersion = 1;

// The learned encoding contract. Feature order, medians and category tables
// are fixed at fit time; encoding against the schema is total.
struct FeatureSchema {
    std::vector<FeatureSpec> features;
    double sentinel = kSentinel;
    int version = kSchemaVersion;

    std::size_t size() const { return features.size(); }
};

struct FeatureVector {
    int schema_version = kSchemaVersion;
    std::vector<double> values;
};

// The descriptor fields that enter the feature space. The flatten step keeps
// exactly these (native extractor field names are first normalized to the
// probe-report names, e.g. byte_size -> size).
std::span<const std::string_view> canonical_stream_fields();
std::span<const std::string_view> canonical_format_fields();
std::string_view normalize_format_field(std::string_view name);

RawFeatureMap flatten(const DescriptorRecord& record);

// Fits the schema over training maps: the feature universe is the union of
// names ordered lexicographically; a feature is numeric iff at least 90% of
// its present values parse as finite numbers, else categorical with codes
// assigned lexicographically. Throws EmptyTrainingSet.
FeatureSchema fit_schema(const std::vector<RawFeatureMap>& maps);

// Encodes one map against a schema: numerics are divided by the training
// median (passed through when |median| <= 1e-12), known categories map to
// their code, and anything missing or unseen becomes the sentinel. Keys
// absent from the schema are ignored.
FeatureVector encode(const FeatureSchema& schema, const RawFeatureMap& map);

std::string schema_to_json(const FeatureSchema& schema);
FeatureSchema schema_from_json(std::string_view text);

}  // namespace streamlens
