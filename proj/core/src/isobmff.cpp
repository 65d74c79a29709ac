#include <array>
#include <cstring>
#include <numeric>
#include <optional>

#include "byte_reader.hpp"
#include "streamlens/extract.hpp"

namespace streamlens {

namespace {

using detail::ByteReader;

constexpr std::uint64_t kInt64Max = 0x7fffffffffffffffULL;

struct BoxHeader {
    std::string type;
    std::uint64_t payload_offset = 0;
    std::uint64_t payload_size = 0;
};

// Reads one box header. size==1 means a 64-bit largesize follows; size==0
// means the box runs to the end of the enclosing window.
BoxHeader read_box_header(ByteReader& in) {
    const std::uint64_t start = in.offset();
    const std::uint64_t available = in.remaining();
    const std::uint64_t size32 = in.read_u32();
    BoxHeader header;
    header.type = std::string(in.read_bytes(4));
    std::uint64_t header_size = 8;
    std::uint64_t box_size = size32;
    if (size32 == 1) {
        box_size = in.read_u64();
        header_size = 16;
    } else if (size32 == 0) {
        box_size = available;
    }
    if (box_size < header_size || box_size > available) {
        throw ParseError(Errc::truncated_box,
                         "box '" + header.type + "' declares " + std::to_string(box_size) +
                             " bytes, " + std::to_string(available) + " available",
                         start);
    }
    header.payload_offset = in.offset();
    header.payload_size = box_size - header_size;
    return header;
}

struct FullBox {
    std::uint8_t version = 0;
    std::uint32_t flags = 0;
};

FullBox read_full_box(ByteReader& in) {
    FullBox fb;
    fb.version = in.read_u8();
    fb.flags = static_cast<std::uint32_t>(in.read_be(3));
    return fb;
}

struct MvhdInfo {
    std::uint64_t timescale = 0;
    std::uint64_t duration = 0;
};

MvhdInfo parse_mvhd(ByteReader in) {
    const auto fb = read_full_box(in);
    MvhdInfo info;
    if (fb.version == 1) {
        in.skip(16);  // creation + modification, 64-bit
        info.timescale = in.read_u32();
        info.duration = in.read_u64();
    } else {
        in.skip(8);
        info.timescale = in.read_u32();
        info.duration = in.read_u32();
    }
    return info;
}

struct TkhdInfo {
    std::uint32_t width = 0;   // integer part of 16.16
    std::uint32_t height = 0;
};

TkhdInfo parse_tkhd(ByteReader in) {
    const auto fb = read_full_box(in);
    // creation/modification/track_id/reserved/duration, then 2x reserved,
    // layer, alternate_group, volume, reserved, 3x3 matrix
    in.skip(fb.version == 1 ? 32 : 20);
    in.skip(8 + 2 + 2 + 2 + 2 + 36);
    TkhdInfo info;
    info.width = in.read_u32() >> 16;
    info.height = in.read_u32() >> 16;
    return info;
}

struct MdhdInfo {
    std::uint64_t timescale = 0;
    std::uint64_t duration = 0;
};

MdhdInfo parse_mdhd(ByteReader in) {
    const auto fb = read_full_box(in);
    MdhdInfo info;
    if (fb.version == 1) {
        in.skip(16);
        info.timescale = in.read_u32();
        info.duration = in.read_u64();
    } else {
        in.skip(8);
        info.timescale = in.read_u32();
        info.duration = in.read_u32();
    }
    return info;
}

std::string parse_hdlr(ByteReader in) {
    read_full_box(in);
    in.skip(4);  // pre_defined
    return std::string(in.read_bytes(4));
}

struct StszInfo {
    std::uint64_t sample_count = 0;
    std::uint64_t total_bytes = 0;
};

StszInfo parse_stsz(ByteReader in) {
    read_full_box(in);
    StszInfo info;
    const std::uint32_t uniform_size = in.read_u32();
    info.sample_count = in.read_u32();
    if (uniform_size != 0) {
        info.total_bytes = info.sample_count * uniform_size;
    } else {
        // per-sample table; entry count is validated against the payload
        in.require(info.sample_count * 4);
        for (std::uint64_t i = 0; i < info.sample_count; ++i) info.total_bytes += in.read_u32();
    }
    return info;
}

std::uint64_t parse_stts_total_ticks(ByteReader in) {
    read_full_box(in);
    const std::uint32_t entry_count = in.read_u32();
    in.require(static_cast<std::uint64_t>(entry_count) * 8);
    std::uint64_t total = 0;
    for (std::uint32_t i = 0; i < entry_count; ++i) {
        const std::uint64_t count = in.read_u32();
        const std::uint64_t delta = in.read_u32();
        total += count * delta;
    }
    return total;
}

const char* avc_profile_name(std::uint8_t profile_idc, std::uint8_t compat) {
    switch (profile_idc) {
        case 66: return (compat & 0x40) ? "Constrained Baseline" : "Baseline";
        case 77: return "Main";
        case 88: return "Extended";
        case 100: return "High";
        case 110: return "High 10";
        case 122: return "High 4:2:2";
        case 244: return "High 4:4:4 Predictive";
        default: return nullptr;
    }
}

const char* hevc_profile_name(std::uint8_t profile_idc) {
    switch (profile_idc) {
        case 1: return "Main";
        case 2: return "Main 10";
        case 3: return "Main Still Picture";
        default: return nullptr;
    }
}

const char* aac_profile_name(std::uint32_t object_type) {
    switch (object_type) {
        case 1: return "Main";
        case 2: return "LC";
        case 5: return "HE-AAC";
        case 29: return "HE-AACv2";
        default: return nullptr;
    }
}

void parse_avcc(ByteReader in, FieldMap& fields) {
    in.read_u8();  // configuration version
    const std::uint8_t profile_idc = in.read_u8();
    const std::uint8_t compat = in.read_u8();
    const std::uint8_t level_idc = in.read_u8();
    if (const char* name = avc_profile_name(profile_idc, compat)) {
        fields.set("profile", std::string(name));
    } else {
        fields.set("profile", std::to_string(profile_idc));
    }
    fields.set("level", static_cast<std::int64_t>(level_idc));
}

void parse_hvcc(ByteReader in, FieldMap& fields) {
    in.read_u8();  // configuration version
    const std::uint8_t b = in.read_u8();
    const std::uint8_t profile_idc = b & 0x1F;
    in.skip(4 + 6);  // profile compatibility + constraint flags
    const std::uint8_t level_idc = in.read_u8();
    if (const char* name = hevc_profile_name(profile_idc)) {
        fields.set("profile", std::string(name));
    } else {
        fields.set("profile", std::to_string(profile_idc));
    }
    fields.set("level", static_cast<std::int64_t>(level_idc));
}

// MPEG-4 descriptor length: 1-4 bytes, 7 bits each, high bit continues.
std::uint32_t read_descriptor_size(ByteReader& in) {
    std::uint32_t size = 0;
    for (int i = 0; i < 4; ++i) {
        const std::uint8_t b = in.read_u8();
        size = (size << 7) | (b & 0x7F);
        if ((b & 0x80) == 0) break;
    }
    return size;
}

void parse_esds(ByteReader in, FieldMap& fields) {
    read_full_box(in);
    while (in.remaining() > 0) {
        const std::uint8_t tag = in.read_u8();
        const std::uint32_t size = read_descriptor_size(in);
        if (tag == 0x03) {  // ES_Descriptor: walk into the payload
            in.skip(2);     // ES_ID
            const std::uint8_t es_flags = in.read_u8();
            if (es_flags & 0x80) in.skip(2);               // dependsOn_ES_ID
            if (es_flags & 0x40) in.skip(in.read_u8());    // URL string
            if (es_flags & 0x20) in.skip(2);               // OCR_ES_ID
            continue;
        }
        if (tag == 0x04) {  // DecoderConfigDescriptor
            auto body = in.sub(size);
            const std::uint8_t object_type = body.read_u8();
            body.skip(1 + 3 + 4);  // streamType, bufferSizeDB, maxBitrate
            const std::uint32_t avg_bitrate = body.read_u32();
            if (avg_bitrate > 0) fields.set("bit_rate", static_cast<std::int64_t>(avg_bitrate));
            while (body.remaining() > 0) {
                const std::uint8_t inner_tag = body.read_u8();
                const std::uint32_t inner_size = read_descriptor_size(body);
                auto inner = body.sub(inner_size);
                if (inner_tag == 0x05 && object_type == 0x40 && inner.remaining() >= 1) {
                    // AudioSpecificConfig: 5-bit audio object type
                    const std::uint32_t aot = inner.read_u8() >> 3;
                    if (const char* name = aac_profile_name(aot)) {
                        fields.set("profile", std::string(name));
                    }
                }
            }
            continue;
        }
        in.skip(size);
    }
}

struct TrackState {
    StreamKind kind = StreamKind::data;
    std::uint32_t tkhd_width = 0;
    std::uint32_t tkhd_height = 0;
    MdhdInfo mdhd;
    std::optional<StszInfo> stsz;
    std::uint64_t stts_ticks = 0;
    std::string codec_name;
    FieldMap entry_fields;  // fields read from the sample entry
};

StreamKind handler_to_kind(const std::string& handler) {
    if (handler == "vide") return StreamKind::video;
    if (handler == "soun") return StreamKind::audio;
    if (handler == "sbtl" || handler == "subt" || handler == "text") return StreamKind::subtitle;
    return StreamKind::data;
}

void parse_sample_entry_children(ByteReader& in, TrackState& track) {
    while (in.remaining() >= 8) {
        const auto child = read_box_header(in);
        auto body = in.sub(child.payload_size);
        if (child.type == "avcC") {
            parse_avcc(body, track.entry_fields);
        } else if (child.type == "hvcC") {
            parse_hvcc(body, track.entry_fields);
        } else if (child.type == "esds") {
            parse_esds(body, track.entry_fields);
        }
    }
}

void parse_stsd(ByteReader in, TrackState& track) {
    read_full_box(in);
    const std::uint32_t entry_count = in.read_u32();
    if (entry_count == 0 || in.remaining() < 8) return;
    // only the first sample entry describes the track for our purposes
    const auto entry = read_box_header(in);
    track.codec_name = entry.type;
    auto body = in.sub(entry.payload_size);
    body.skip(6 + 2);  // reserved + data_reference_index
    if (track.kind == StreamKind::video) {
        body.skip(2 + 2 + 12);  // pre_defined, reserved, pre_defined[3]
        const std::uint16_t width = body.read_u16();
        const std::uint16_t height = body.read_u16();
        body.skip(4 + 4 + 4 + 2 + 32 + 2 + 2);  // resolutions .. pre_defined
        track.entry_fields.set("width", static_cast<std::int64_t>(width));
        track.entry_fields.set("height", static_cast<std::int64_t>(height));
        parse_sample_entry_children(body, track);
    } else if (track.kind == StreamKind::audio) {
        body.skip(8);  // reserved
        const std::uint16_t channels = body.read_u16();
        body.skip(2 + 2 + 2);  // samplesize, pre_defined, reserved
        const std::uint32_t sample_rate = body.read_u32() >> 16;
        track.entry_fields.set("channels", static_cast<std::int64_t>(channels));
        track.entry_fields.set("sample_rate", static_cast<std::int64_t>(sample_rate));
        parse_sample_entry_children(body, track);
    }
}

void parse_stbl(ByteReader in, TrackState& track) {
    while (in.remaining() > 0) {
        const auto box = read_box_header(in);
        auto body = in.sub(box.payload_size);
        if (box.type == "stsd") {
            parse_stsd(body, track);
        } else if (box.type == "stsz") {
            track.stsz = parse_stsz(body);
        } else if (box.type == "stts") {
            track.stts_ticks = parse_stts_total_ticks(body);
        }
    }
}

void parse_minf(ByteReader in, TrackState& track) {
    while (in.remaining() > 0) {
        const auto box = read_box_header(in);
        auto body = in.sub(box.payload_size);
        if (box.type == "stbl") parse_stbl(body, track);
    }
}

void parse_mdia(ByteReader in, TrackState& track) {
    while (in.remaining() > 0) {
        const auto box = read_box_header(in);
        auto body = in.sub(box.payload_size);
        if (box.type == "mdhd") {
            track.mdhd = parse_mdhd(body);
        } else if (box.type == "hdlr") {
            track.kind = handler_to_kind(parse_hdlr(body));
        } else if (box.type == "minf") {
            parse_minf(body, track);
        }
    }
}

std::optional<Rational> frame_rate_of(const TrackState& track) {
    std::uint64_t duration_ticks = track.mdhd.duration;
    if (duration_ticks == 0) duration_ticks = track.stts_ticks;
    if (!track.stsz || track.stsz->sample_count == 0 || track.mdhd.timescale == 0 || duration_ticks == 0)
        return std::nullopt;
    const std::uint64_t num = track.stsz->sample_count * track.mdhd.timescale;
    if (track.stsz->sample_count != 0 && num / track.stsz->sample_count != track.mdhd.timescale)
        return std::nullopt;  // overflow on corrupted counts
    if (num > kInt64Max || duration_ticks > kInt64Max) return std::nullopt;
    const std::uint64_t g = std::gcd(num, duration_ticks);
    return Rational{static_cast<std::int64_t>(num / g), static_cast<std::int64_t>(duration_ticks / g)};
}

StreamDescriptor finish_track(TrackState&& track, std::size_t index) {
    StreamDescriptor stream;
    stream.kind = track.kind;
    stream.index = index;
    FieldMap& f = stream.fields;
    if (!track.codec_name.empty()) f.set("codec_name", sanitize_utf8(track.codec_name));
    f.set("codec_type", std::string(stream_kind_name(track.kind)));
    // sample-entry dimensions win over the 16.16 presentation size in tkhd
    for (const auto& [name, value] : track.entry_fields) f.set(name, value);
    if (track.kind == StreamKind::video && !f.contains("width") && track.tkhd_width > 0) {
        f.set("width", static_cast<std::int64_t>(track.tkhd_width));
        f.set("height", static_cast<std::int64_t>(track.tkhd_height));
    }
    double duration_seconds = 0.0;
    std::uint64_t duration_ticks = track.mdhd.duration ? track.mdhd.duration : track.stts_ticks;
    if (track.mdhd.timescale > 0 && duration_ticks > 0) {
        duration_seconds = static_cast<double>(duration_ticks) / static_cast<double>(track.mdhd.timescale);
        f.set("duration", duration_seconds);
    }
    if (const auto rate = frame_rate_of(track); rate && track.kind == StreamKind::video) {
        f.set("avg_frame_rate", *rate);
    }
    if (track.stsz && track.stsz->sample_count > 0) {
        if (track.kind == StreamKind::video) {
            f.set("nb_frames", static_cast<std::int64_t>(track.stsz->sample_count));
        }
        if (!f.contains("bit_rate") && duration_seconds > 0.0) {
            const double bps = static_cast<double>(track.stsz->total_bytes) * 8.0 / duration_seconds;
            if (bps >= 1.0 && bps <= static_cast<double>(kInt64Max)) {
                f.set("bit_rate", static_cast<std::int64_t>(bps));
            }
        }
    }
    return stream;
}

}  // namespace

DescriptorRecord parse_isobmff(std::span<const std::uint8_t> bytes, std::string source_id) {
    ByteReader in(bytes, 0, Errc::truncated_box);
    DescriptorRecord record;
    record.source_id = std::move(source_id);

    MvhdInfo mvhd;
    bool saw_moov = false;
    std::vector<TrackState> tracks;

    while (!in.at_end()) {
        const auto box = read_box_header(in);
        auto body = in.sub(box.payload_size);
        if (box.type != "moov") continue;  // ftyp, mdat, free, vendor boxes: skip by size
        saw_moov = true;
        while (body.remaining() > 0) {
            const auto child = read_box_header(body);
            auto child_body = body.sub(child.payload_size);
            if (child.type == "mvhd") {
                mvhd = parse_mvhd(child_body);
            } else if (child.type == "trak") {
                TrackState track;
                while (child_body.remaining() > 0) {
                    const auto trak_child = read_box_header(child_body);
                    auto trak_body = child_body.sub(trak_child.payload_size);
                    if (trak_child.type == "tkhd") {
                        const auto tkhd = parse_tkhd(trak_body);
                        track.tkhd_width = tkhd.width;
                        track.tkhd_height = tkhd.height;
                    } else if (trak_child.type == "mdia") {
                        parse_mdia(trak_body, track);
                    }
                }
                tracks.push_back(std::move(track));
            }
        }
    }
    if (!saw_moov) {
        throw ParseError(Errc::missing_moov, "no moov box in " + std::to_string(bytes.size()) + " bytes",
                         bytes.size());
    }

    record.container_fields.set("format_name", std::string("mov,mp4,m4a,3gp,3g2,mj2"));
    if (mvhd.timescale > 0 && mvhd.duration > 0) {
        const double duration = static_cast<double>(mvhd.duration) / static_cast<double>(mvhd.timescale);
        record.container_fields.set("duration_seconds", duration);
        const double bps = static_cast<double>(bytes.size()) * 8.0 / duration;
        if (bps >= 1.0 && bps <= static_cast<double>(kInt64Max)) {
            record.container_fields.set("overall_bit_rate", static_cast<std::int64_t>(bps));
        }
    }
    record.container_fields.set("byte_size", static_cast<std::int64_t>(bytes.size()));
    record.container_fields.set("stream_count", static_cast<std::int64_t>(tracks.size()));

    record.streams.reserve(tracks.size());
    for (std::size_t i = 0; i < tracks.size(); ++i) {
        record.streams.push_back(finish_track(std::move(tracks[i]), i));
    }
    return record;
}

}  // namespace streamlens
