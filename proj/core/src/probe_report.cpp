#include <nlohmann/json.hpp>

#include "streamlens/error.hpp"
#include "streamlens/extract.hpp"

namespace streamlens {

namespace {

using nlohmann::json;

DescriptorValue json_to_value(const json& v) {
    if (v.is_string()) return sanitize_utf8(v.get<std::string>());
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_unsigned()) return static_cast<std::int64_t>(v.get<std::uint64_t>());
    if (v.is_number_float()) return v.get<double>();
    if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
    return sanitize_utf8(v.dump());
}

// Scalar keys map 1:1; a nested "tags" object is flattened with a "tags."
// prefix. Other nested structures (disposition and such) carry no descriptor
// information and are dropped.
void ingest_object(const json& obj, FieldMap& fields) {
    for (const auto& [key, value] : obj.items()) {
        if (value.is_object()) {
            if (key == "tags") {
                for (const auto& [tag_key, tag_value] : value.items()) {
                    if (!tag_value.is_object() && !tag_value.is_array()) {
                        fields.set("tags." + tag_key, json_to_value(tag_value));
                    }
                }
            }
            continue;
        }
        if (value.is_array() || value.is_null()) continue;
        fields.set(key, json_to_value(value));
    }
}

StreamKind codec_type_to_kind(const json& stream) {
    const auto it = stream.find("codec_type");
    if (it == stream.end() || !it->is_string()) return StreamKind::data;
    const auto& type = it->get_ref<const std::string&>();
    if (type == "video") return StreamKind::video;
    if (type == "audio") return StreamKind::audio;
    if (type == "subtitle") return StreamKind::subtitle;
    return StreamKind::data;
}

}  // namespace

DescriptorRecord parse_probe_report(std::string_view text, std::string source_id) {
    const json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw Error(Errc::malformed_document, "probe report is not a structured document");
    }
    const auto streams_it = doc.find("streams");
    if (streams_it == doc.end()) {
        throw Error(Errc::missing_streams, "probe report has no \"streams\" key");
    }
    if (!streams_it->is_array()) {
        throw Error(Errc::malformed_document, "\"streams\" is not an array");
    }

    DescriptorRecord record;
    record.source_id = std::move(source_id);
    for (const auto& stream_obj : *streams_it) {
        if (!stream_obj.is_object()) {
            throw Error(Errc::malformed_document, "stream entry is not an object");
        }
        StreamDescriptor stream;
        stream.kind = codec_type_to_kind(stream_obj);
        stream.index = record.streams.size();  // report order, dense from 0
        ingest_object(stream_obj, stream.fields);
        record.streams.push_back(std::move(stream));
    }
    if (const auto format_it = doc.find("format"); format_it != doc.end() && format_it->is_object()) {
        ingest_object(*format_it, record.container_fields);
    }
    return record;
}

}  // namespace streamlens
