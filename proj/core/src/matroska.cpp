#include <bit>
#include <optional>

#include "byte_reader.hpp"
#include "streamlens/extract.hpp"

namespace streamlens {

namespace {

using detail::ByteReader;

// Element IDs as stored (marker bit included).
namespace id {
constexpr std::uint64_t ebml_header = 0x1A45DFA3;
constexpr std::uint64_t segment = 0x18538067;
constexpr std::uint64_t info = 0x1549A966;
constexpr std::uint64_t timestamp_scale = 0x2AD7B1;
constexpr std::uint64_t duration = 0x4489;
constexpr std::uint64_t tracks = 0x1654AE6B;
constexpr std::uint64_t track_entry = 0xAE;
constexpr std::uint64_t track_number = 0xD7;
constexpr std::uint64_t track_type = 0x83;
constexpr std::uint64_t codec_id = 0x86;
constexpr std::uint64_t video = 0xE0;
constexpr std::uint64_t pixel_width = 0xB0;
constexpr std::uint64_t pixel_height = 0xBA;
constexpr std::uint64_t audio = 0xE1;
constexpr std::uint64_t sampling_frequency = 0xB5;
constexpr std::uint64_t channels = 0x9F;
}  // namespace id

constexpr std::uint64_t kUnknownSize = ~0ULL;

// EBML variable-length integer. `keep_marker` distinguishes element IDs
// (marker retained) from sizes (marker stripped).
std::uint64_t read_varint(ByteReader& in, bool keep_marker) {
    const std::uint64_t start = in.offset();
    const std::uint8_t first = in.read_u8();
    if (first == 0) {
        throw ParseError(Errc::malformed_varint, "zero length descriptor", start);
    }
    const int length = std::countl_zero(first) + 1;  // operates on the 8-bit width
    std::uint64_t value = first;
    if (!keep_marker) value &= (0xFFu >> length);
    std::uint64_t all_ones = keep_marker ? 0 : (0xFFull >> length);
    for (int i = 1; i < length; ++i) {
        const std::uint8_t b = in.read_u8();
        value = (value << 8) | b;
        all_ones = (all_ones << 8) | 0xFF;
    }
    if (!keep_marker && value == all_ones) return kUnknownSize;
    return value;
}

struct Element {
    std::uint64_t element_id = 0;
    std::uint64_t size = 0;
    std::uint64_t offset = 0;
};

Element read_element_header(ByteReader& in) {
    Element el;
    el.offset = in.offset();
    el.element_id = read_varint(in, /*keep_marker=*/true);
    el.size = read_varint(in, /*keep_marker=*/false);
    return el;
}

std::uint64_t read_uint_body(ByteReader body) {
    std::uint64_t v = 0;
    while (body.remaining() > 0 && v <= (~0ULL >> 8)) v = (v << 8) | body.read_u8();
    return v;
}

std::optional<double> read_float_body(ByteReader body, std::uint64_t size, std::uint64_t offset) {
    if (size == 4) {
        const std::uint32_t bits = body.read_u32();
        return static_cast<double>(std::bit_cast<float>(bits));
    }
    if (size == 8) {
        return std::bit_cast<double>(body.read_u64());
    }
    if (size == 0) return std::nullopt;
    throw ParseError(Errc::truncated_element, "float element of " + std::to_string(size) + " bytes", offset);
}

// Resolves an element body, enforcing the declared size against the window.
// Unknown-size is only meaningful for Segment, which runs to end of input.
ByteReader element_body(ByteReader& in, const Element& el) {
    if (el.size == kUnknownSize) {
        if (el.element_id == id::segment) return in.sub(in.remaining());
        throw ParseError(Errc::truncated_element, "unknown-size element", el.offset);
    }
    if (el.size > in.remaining()) {
        throw ParseError(Errc::truncated_element,
                         "element declares " + std::to_string(el.size) + " bytes, " +
                             std::to_string(in.remaining()) + " remain",
                         el.offset);
    }
    return in.sub(el.size);
}

StreamKind track_type_to_kind(std::uint64_t type) {
    switch (type) {
        case 1: return StreamKind::video;
        case 2: return StreamKind::audio;
        case 17: return StreamKind::subtitle;
        default: return StreamKind::data;
    }
}

StreamDescriptor parse_track_entry(ByteReader body, std::size_t index) {
    StreamDescriptor stream;
    stream.index = index;
    while (body.remaining() > 0) {
        const auto el = read_element_header(body);
        auto el_body = element_body(body, el);
        switch (el.element_id) {
            case id::track_type:
                stream.kind = track_type_to_kind(read_uint_body(el_body));
                break;
            case id::codec_id:
                stream.fields.set("codec_name", sanitize_utf8(el_body.read_bytes(el_body.remaining())));
                break;
            case id::track_number:
                stream.fields.set("track_number", static_cast<std::int64_t>(read_uint_body(el_body)));
                break;
            case id::video:
                while (el_body.remaining() > 0) {
                    const auto sub = read_element_header(el_body);
                    auto sub_body = element_body(el_body, sub);
                    if (sub.element_id == id::pixel_width) {
                        stream.fields.set("width", static_cast<std::int64_t>(read_uint_body(sub_body)));
                    } else if (sub.element_id == id::pixel_height) {
                        stream.fields.set("height", static_cast<std::int64_t>(read_uint_body(sub_body)));
                    }
                }
                break;
            case id::audio:
                while (el_body.remaining() > 0) {
                    const auto sub = read_element_header(el_body);
                    auto sub_body = element_body(el_body, sub);
                    if (sub.element_id == id::sampling_frequency) {
                        if (const auto v = read_float_body(sub_body, sub.size, sub.offset)) {
                            stream.fields.set("sample_rate", *v);
                        }
                    } else if (sub.element_id == id::channels) {
                        stream.fields.set("channels", static_cast<std::int64_t>(read_uint_body(sub_body)));
                    }
                }
                break;
            default:
                break;  // skipped by size
        }
    }
    stream.fields.set("codec_type", std::string(stream_kind_name(stream.kind)));
    return stream;
}

}  // namespace

DescriptorRecord parse_matroska(std::span<const std::uint8_t> bytes, std::string source_id) {
    ByteReader in(bytes, 0, Errc::truncated_element);
    DescriptorRecord record;
    record.source_id = std::move(source_id);

    double timestamp_scale = 1'000'000.0;  // spec default, nanoseconds per tick
    std::optional<double> raw_duration;

    while (!in.at_end()) {
        const auto top = read_element_header(in);
        auto top_body = element_body(in, top);
        if (top.element_id != id::segment) continue;  // EBML header and junk: skip by size
        while (top_body.remaining() > 0) {
            const auto section = read_element_header(top_body);
            auto body = element_body(top_body, section);
            if (section.element_id == id::info) {
                while (body.remaining() > 0) {
                    const auto el = read_element_header(body);
                    auto el_body = element_body(body, el);
                    if (el.element_id == id::timestamp_scale) {
                        timestamp_scale = static_cast<double>(read_uint_body(el_body));
                    } else if (el.element_id == id::duration) {
                        raw_duration = read_float_body(el_body, el.size, el.offset);
                    }
                }
            } else if (section.element_id == id::tracks) {
                while (body.remaining() > 0) {
                    const auto el = read_element_header(body);
                    auto el_body = element_body(body, el);
                    if (el.element_id == id::track_entry) {
                        record.streams.push_back(parse_track_entry(el_body, record.streams.size()));
                    }
                }
            }
        }
    }

    record.container_fields.set("format_name", std::string("matroska,webm"));
    if (raw_duration && *raw_duration >= 0.0) {
        record.container_fields.set("duration_seconds", *raw_duration * timestamp_scale * 1e-9);
    }
    record.container_fields.set("byte_size", static_cast<std::int64_t>(bytes.size()));
    record.container_fields.set("stream_count", static_cast<std::int64_t>(record.streams.size()));
    return record;
}

}  // namespace streamlens
