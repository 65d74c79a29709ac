#include "streamlens/record_json.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "streamlens/features.hpp"

namespace streamlens {

namespace {

using nlohmann::json;

json value_to_json(const DescriptorValue& value) {
    switch (value.index()) {
        case 0: return std::get<std::string>(value);
        case 1: return std::get<std::int64_t>(value);
        case 2: return std::get<double>(value);
        default: return value_to_string(value);  // rational as "num/den"
    }
}

void place_field(json& obj, std::string_view name, const DescriptorValue& value) {
    if (name.starts_with("tags.")) {
        obj["tags"][std::string(name.substr(5))] = value_to_json(value);
    } else {
        obj[std::string(name)] = value_to_json(value);
    }
}

template <typename StreamFilter, typename FormatFilter>
std::string render(const DescriptorRecord& record, StreamFilter stream_ok, FormatFilter format_ok) {
    json streams = json::array();
    for (const auto& stream : record.streams) {
        json obj;
        obj["index"] = stream.index;
        obj["codec_type"] = stream_kind_name(stream.kind);
        for (const auto& [name, value] : stream.fields) {
            if (stream_ok(name)) place_field(obj, name, value);
        }
        streams.push_back(std::move(obj));
    }
    json format = json::object();
    for (const auto& [name, value] : record.container_fields) {
        const auto canonical = normalize_format_field(name);
        if (format_ok(canonical)) place_field(format, std::string(canonical), value);
    }
    json doc{{"streams", std::move(streams)}, {"format", std::move(format)}};
    return doc.dump(2) + "\n";
}

}  // namespace

std::string record_to_probe_json(const DescriptorRecord& record) {
    return render(
        record, [](std::string_view) { return true; }, [](std::string_view) { return true; });
}

std::string record_to_canonical_json(const DescriptorRecord& record) {
    const auto stream_fields = canonical_stream_fields();
    const auto format_fields = canonical_format_fields();
    return render(
        record,
        [&](std::string_view name) {
            return std::find(stream_fields.begin(), stream_fields.end(), name) != stream_fields.end();
        },
        [&](std::string_view name) {
            return std::find(format_fields.begin(), format_fields.end(), name) != format_fields.end();
        });
}

}  // namespace streamlens
