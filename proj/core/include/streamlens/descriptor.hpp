#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace streamlens {

// One reduced fraction, e.g. an average frame rate of 30000/1001.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;  // never zero

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
};

// A single descriptor field value as found in a container or probe report.
// Text is sanitized UTF-8 (invalid bytes replaced with U+FFFD).
using DescriptorValue = std::variant<std::string, std::int64_t, double, Rational>;

std::string value_to_string(const DescriptorValue& value);

// Tries to read a value as a finite number; rationals evaluate to num/den and
// text accepts both decimal and "num/den" forms. "N/A" and friends fail.
std::optional<double> value_as_number(const DescriptorValue& value);

enum class StreamKind { video, audio, subtitle, data };

const char* stream_kind_name(StreamKind kind);

// Field order is parse order; names are unique within one stream.
class FieldMap {
public:
    void set(std::string name, DescriptorValue value);
    const DescriptorValue* find(const std::string& name) const;
    bool contains(const std::string& name) const { return find(name) != nullptr; }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    bool operator==(const FieldMap&) const = default;

private:
    std::vector<std::pair<std::string, DescriptorValue>> entries_;
};

struct StreamDescriptor {
    StreamKind kind = StreamKind::data;
    std::size_t index = 0;  // dense position within the container
    FieldMap fields;

    bool operator==(const StreamDescriptor&) const = default;
};

// Everything extracted from one video: format-level fields plus one
// StreamDescriptor per stream, in container order.
struct DescriptorRecord {
    std::string source_id;
    FieldMap container_fields;
    std::vector<StreamDescriptor> streams;

    bool operator==(const DescriptorRecord&) const = default;
};

// Replaces invalid UTF-8 byte sequences with U+FFFD.
std::string sanitize_utf8(std::string_view raw);

}  // namespace streamlens
