#include "fixtures.hpp"

#include <bit>

#include <nlohmann/json.hpp>

#include "streamlens/record_json.hpp"

namespace streamlens::testsupport {

namespace {

using nlohmann::json;

constexpr std::uint64_t kMvhdTimescaleAvc = 1000;
constexpr std::uint64_t kMvhdDurationAvc = 10000;

std::string dump(json doc) { return doc.dump(2) + "\n"; }

}  // namespace

Bytes& Bytes::u8(std::uint8_t v) {
    data_.push_back(v);
    return *this;
}
Bytes& Bytes::u16(std::uint16_t v) { return u8(static_cast<std::uint8_t>(v >> 8)).u8(static_cast<std::uint8_t>(v)); }
Bytes& Bytes::u24(std::uint32_t v) {
    return u8(static_cast<std::uint8_t>(v >> 16)).u8(static_cast<std::uint8_t>(v >> 8)).u8(static_cast<std::uint8_t>(v));
}
Bytes& Bytes::u32(std::uint32_t v) { return u16(static_cast<std::uint16_t>(v >> 16)).u16(static_cast<std::uint16_t>(v)); }
Bytes& Bytes::u64(std::uint64_t v) { return u32(static_cast<std::uint32_t>(v >> 32)).u32(static_cast<std::uint32_t>(v)); }
Bytes& Bytes::f32(float v) { return u32(std::bit_cast<std::uint32_t>(v)); }
Bytes& Bytes::f64(double v) { return u64(std::bit_cast<std::uint64_t>(v)); }
Bytes& Bytes::raw(const std::vector<std::uint8_t>& data) {
    data_.insert(data_.end(), data.begin(), data.end());
    return *this;
}
Bytes& Bytes::raw(const Bytes& other) { return raw(other.data_); }
Bytes& Bytes::ascii(std::string_view text) {
    data_.insert(data_.end(), text.begin(), text.end());
    return *this;
}
Bytes& Bytes::zeros(std::size_t count) {
    data_.insert(data_.end(), count, 0);
    return *this;
}

Bytes mp4_box(std::string_view type, const Bytes& payload) {
    Bytes box;
    box.u32(static_cast<std::uint32_t>(payload.size() + 8)).ascii(type).raw(payload);
    return box;
}

namespace {

Bytes ebml_varint(std::uint64_t value) {
    // minimal length such that value fits below the all-ones reserved pattern
    int length = 1;
    while (length < 8 && value >= ((1ULL << (7 * length)) - 1)) ++length;
    Bytes out;
    for (int i = length - 1; i >= 0; --i) {
        std::uint8_t byte = static_cast<std::uint8_t>(value >> (8 * i));
        if (i == length - 1) byte |= static_cast<std::uint8_t>(0x80 >> (length - 1));
        out.u8(byte);
    }
    return out;
}

Bytes ebml_id(std::uint64_t element_id) {
    Bytes out;
    int length = 1;
    while (length < 4 && element_id >= (1ULL << (8 * length))) ++length;
    for (int i = length - 1; i >= 0; --i) out.u8(static_cast<std::uint8_t>(element_id >> (8 * i)));
    return out;
}

}  // namespace

Bytes ebml_element(std::uint64_t element_id, const Bytes& payload) {
    Bytes out;
    out.raw(ebml_id(element_id)).raw(ebml_varint(payload.size())).raw(payload);
    return out;
}

Bytes ebml_uint(std::uint64_t element_id, std::uint64_t value) {
    Bytes payload;
    int length = 1;
    while (length < 8 && value >= (1ULL << (8 * length))) ++length;
    for (int i = length - 1; i >= 0; --i) payload.u8(static_cast<std::uint8_t>(value >> (8 * i)));
    return ebml_element(element_id, payload);
}

Bytes ebml_float4(std::uint64_t element_id, float value) {
    Bytes payload;
    payload.f32(value);
    return ebml_element(element_id, payload);
}

Bytes ebml_string(std::uint64_t element_id, std::string_view value) {
    Bytes payload;
    payload.ascii(value);
    return ebml_element(element_id, payload);
}

namespace {

// --- ISOBMFF building blocks ---------------------------------------------

Bytes ftyp_box() {
    Bytes payload;
    payload.ascii("isom").u32(0x200).ascii("isomiso2avc1mp41");
    return mp4_box("ftyp", payload);
}

Bytes mvhd_box(std::uint32_t timescale, std::uint32_t duration) {
    Bytes p;
    p.u32(0);                    // version + flags
    p.u32(0).u32(0);             // creation, modification
    p.u32(timescale).u32(duration);
    p.u32(0x00010000).u16(0x0100).u16(0);  // rate, volume, reserved
    p.zeros(8);
    p.u32(0x00010000).u32(0).u32(0);  // unity matrix
    p.u32(0).u32(0x00010000).u32(0);
    p.u32(0).u32(0).u32(0x40000000);
    p.zeros(24);  // pre_defined
    p.u32(2);     // next track id
    return mp4_box("mvhd", p);
}

Bytes tkhd_box(std::uint32_t track_id, std::uint32_t duration, std::uint32_t width,
               std::uint32_t height) {
    Bytes p;
    p.u32(0x00000007);  // version 0, flags: enabled | in movie | in preview
    p.u32(0).u32(0);
    p.u32(track_id).u32(0).u32(duration);
    p.zeros(8);
    p.u16(0).u16(0).u16(0).u16(0);  // layer, alternate group, volume, reserved
    p.u32(0x00010000).u32(0).u32(0);
    p.u32(0).u32(0x00010000).u32(0);
    p.u32(0).u32(0).u32(0x40000000);
    p.u32(width << 16).u32(height << 16);
    return mp4_box("tkhd", p);
}

Bytes mdhd_box(std::uint32_t timescale, std::uint32_t duration) {
    Bytes p;
    p.u32(0);
    p.u32(0).u32(0);
    p.u32(timescale).u32(duration);
    p.u16(0x55C4).u16(0);  // language "und", pre_defined
    return mp4_box("mdhd", p);
}

Bytes hdlr_box(std::string_view handler, std::string_view name) {
    Bytes p;
    p.u32(0).u32(0).ascii(handler).zeros(12).ascii(name).u8(0);
    return mp4_box("hdlr", p);
}

Bytes avcc_box(std::uint8_t profile, std::uint8_t compat, std::uint8_t level) {
    Bytes p;
    p.u8(1).u8(profile).u8(compat).u8(level);
    p.u8(0xFF).u8(0xE1).u16(0);  // nal length size, sps count, empty sps
    p.u8(0);                     // pps count
    return mp4_box("avcC", p);
}

Bytes avc1_entry(std::uint16_t width, std::uint16_t height, const Bytes& avcc) {
    Bytes p;
    p.zeros(6).u16(1);            // reserved, data_reference_index
    p.u16(0).u16(0).zeros(12);    // pre_defined, reserved, pre_defined[3]
    p.u16(width).u16(height);
    p.u32(0x00480000).u32(0x00480000).u32(0);  // 72 dpi, reserved
    p.u16(1);                     // frame count
    p.zeros(32);                  // compressor name
    p.u16(0x0018).u16(0xFFFF);    // depth, pre_defined
    p.raw(avcc);
    return mp4_box("avc1", p);
}

Bytes esds_box(std::uint32_t avg_bitrate, std::uint8_t audio_object_type) {
    Bytes asc;  // AudioSpecificConfig: AOT(5) freq_index(4) channels(4) pad
    asc.u8(static_cast<std::uint8_t>(audio_object_type << 3 | 0x02)).u8(0x10);

    Bytes dec_specific;
    dec_specific.u8(0x05).u8(static_cast<std::uint8_t>(asc.size())).raw(asc);

    Bytes dec_config_payload;
    dec_config_payload.u8(0x40).u8(0x15).u24(0).u32(avg_bitrate * 2).u32(avg_bitrate);
    dec_config_payload.raw(dec_specific);
    Bytes dec_config;
    dec_config.u8(0x04).u8(static_cast<std::uint8_t>(dec_config_payload.size())).raw(dec_config_payload);

    Bytes sl_config;
    sl_config.u8(0x06).u8(1).u8(0x02);

    Bytes es_payload;
    es_payload.u16(1).u8(0);  // ES_ID, flags
    es_payload.raw(dec_config).raw(sl_config);
    Bytes es;
    es.u8(0x03).u8(static_cast<std::uint8_t>(es_payload.size())).raw(es_payload);

    Bytes p;
    p.u32(0);  // version + flags
    p.raw(es);
    return mp4_box("esds", p);
}

Bytes mp4a_entry(std::uint16_t channels, std::uint32_t sample_rate, const Bytes& esds) {
    Bytes p;
    p.zeros(6).u16(1);
    p.zeros(8);  // reserved
    p.u16(channels).u16(16).u16(0).u16(0);
    p.u32(sample_rate << 16);
    p.raw(esds);
    return mp4_box("mp4a", p);
}

Bytes stsd_box(const Bytes& entry) {
    Bytes p;
    p.u32(0).u32(1).raw(entry);
    return mp4_box("stsd", p);
}

Bytes stts_box(std::uint32_t sample_count, std::uint32_t delta) {
    Bytes p;
    p.u32(0).u32(1).u32(sample_count).u32(delta);
    return mp4_box("stts", p);
}

Bytes stsz_box(std::uint32_t uniform_size, std::uint32_t sample_count) {
    Bytes p;
    p.u32(0).u32(uniform_size).u32(sample_count);
    return mp4_box("stsz", p);
}

Bytes trak_box(const Bytes& tkhd, const Bytes& mdhd, const Bytes& hdlr, const Bytes& stsd,
               const Bytes& stts, const Bytes& stsz) {
    Bytes stbl_payload;
    stbl_payload.raw(stsd).raw(stts).raw(stsz);
    const Bytes stbl = mp4_box("stbl", stbl_payload);
    Bytes minf_payload;
    minf_payload.raw(stbl);
    const Bytes minf = mp4_box("minf", minf_payload);
    Bytes mdia_payload;
    mdia_payload.raw(mdhd).raw(hdlr).raw(minf);
    const Bytes mdia = mp4_box("mdia", mdia_payload);
    Bytes trak_payload;
    trak_payload.raw(tkhd).raw(mdia);
    return mp4_box("trak", trak_payload);
}

std::vector<std::uint8_t> assemble_mp4(std::uint32_t mvhd_timescale, std::uint32_t mvhd_duration,
                                       const std::vector<Bytes>& traks) {
    Bytes moov_payload;
    moov_payload.raw(mvhd_box(mvhd_timescale, mvhd_duration));
    for (const auto& trak : traks) moov_payload.raw(trak);
    Bytes file;
    file.raw(ftyp_box()).raw(mp4_box("moov", moov_payload));
    return file.data();
}

void set_container_fields(DescriptorRecord& record, const std::string& format_name, double duration,
                          std::size_t byte_size, std::size_t stream_count, bool with_bit_rate) {
    record.container_fields.set("format_name", format_name);
    if (duration > 0.0) {
        record.container_fields.set("duration_seconds", duration);
        if (with_bit_rate) {
            record.container_fields.set(
                "overall_bit_rate",
                static_cast<std::int64_t>(static_cast<double>(byte_size) * 8.0 / duration));
        }
    }
    record.container_fields.set("byte_size", static_cast<std::int64_t>(byte_size));
    record.container_fields.set("stream_count", static_cast<std::int64_t>(stream_count));
}

json probe_format_object(const DescriptorRecord& record, bool with_bit_rate) {
    // reference-extractor conventions: duration/size/bit_rate as strings
    json format{{"format_name", std::get<std::string>(*record.container_fields.find("format_name"))},
                {"nb_streams", record.streams.size()},
                {"probe_score", 100}};
    if (const auto* duration = record.container_fields.find("duration_seconds")) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6f", std::get<double>(*duration));
        format["duration"] = buf;
    }
    if (const auto* size = record.container_fields.find("byte_size")) {
        format["size"] = std::to_string(std::get<std::int64_t>(*size));
    }
    if (with_bit_rate) {
        if (const auto* rate = record.container_fields.find("overall_bit_rate")) {
            format["bit_rate"] = std::to_string(std::get<std::int64_t>(*rate));
        }
    }
    return format;
}

// --- the fixtures ----------------------------------------------------------

Fixture make_avc_video_fixture() {
    Fixture fx;
    fx.file_name = "avc_video.mp4";
    const Bytes avcc = avcc_box(100, 0, 40);
    const Bytes trak = trak_box(tkhd_box(1, 10000, 640, 480), mdhd_box(30000, 300000),
                                hdlr_box("vide", "VideoHandler"), stsd_box(avc1_entry(640, 480, avcc)),
                                stts_box(300, 1000), stsz_box(1000, 300));
    fx.bytes = assemble_mp4(kMvhdTimescaleAvc, kMvhdDurationAvc, {trak});

    StreamDescriptor video;
    video.kind = StreamKind::video;
    video.index = 0;
    video.fields.set("codec_name", std::string("avc1"));
    video.fields.set("codec_type", std::string("video"));
    video.fields.set("width", std::int64_t{640});
    video.fields.set("height", std::int64_t{480});
    video.fields.set("profile", std::string("High"));
    video.fields.set("level", std::int64_t{40});
    video.fields.set("duration", 10.0);
    video.fields.set("avg_frame_rate", Rational{30, 1});
    video.fields.set("nb_frames", std::int64_t{300});
    video.fields.set("bit_rate", std::int64_t{240000});
    fx.expected.streams.push_back(video);
    set_container_fields(fx.expected, "mov,mp4,m4a,3gp,3g2,mj2", 10.0, fx.bytes.size(), 1, true);
    fx.golden_json = record_to_canonical_json(fx.expected);

    json stream{{"index", 0},
                {"codec_name", "avc1"},
                {"codec_type", "video"},
                {"codec_tag_string", "avc1"},
                {"profile", "High"},
                {"level", 40},
                {"width", 640},
                {"height", 480},
                {"avg_frame_rate", "30/1"},
                {"r_frame_rate", "30/1"},
                {"time_base", "1/30000"},
                {"bit_rate", "240000"},
                {"nb_frames", "300"},
                {"duration", "10.000000"}};
    fx.probe_json = dump(json{{"streams", json::array({stream})},
                              {"format", probe_format_object(fx.expected, true)}});
    return fx;
}

Fixture make_aac_audio_fixture() {
    Fixture fx;
    fx.file_name = "aac_audio.mp4";
    const Bytes trak = trak_box(tkhd_box(1, 3000, 0, 0), mdhd_box(44100, 220500),
                                hdlr_box("soun", "SoundHandler"),
                                stsd_box(mp4a_entry(2, 44100, esds_box(128000, 2))),
                                stts_box(215, 1024), stsz_box(418, 215));
    fx.bytes = assemble_mp4(600, 3000, {trak});

    StreamDescriptor audio;
    audio.kind = StreamKind::audio;
    audio.index = 0;
    audio.fields.set("codec_name", std::string("mp4a"));
    audio.fields.set("codec_type", std::string("audio"));
    audio.fields.set("channels", std::int64_t{2});
    audio.fields.set("sample_rate", std::int64_t{44100});
    audio.fields.set("bit_rate", std::int64_t{128000});
    audio.fields.set("profile", std::string("LC"));
    audio.fields.set("duration", 5.0);
    fx.expected.streams.push_back(audio);
    set_container_fields(fx.expected, "mov,mp4,m4a,3gp,3g2,mj2", 5.0, fx.bytes.size(), 1, true);
    fx.golden_json = record_to_canonical_json(fx.expected);

    json stream{{"index", 0},
                {"codec_name", "mp4a"},
                {"codec_type", "audio"},
                {"profile", "LC"},
                {"sample_rate", "44100"},
                {"channels", 2},
                {"channel_layout", "stereo"},
                {"bit_rate", "128000"},
                {"duration", "5.000000"}};
    fx.probe_json = dump(json{{"streams", json::array({stream})},
                              {"format", probe_format_object(fx.expected, true)}});
    return fx;
}

Fixture make_two_track_fixture() {
    Fixture fx;
    fx.file_name = "av_two_track.mp4";
    const Bytes video_trak =
        trak_box(tkhd_box(1, 5000, 1280, 720), mdhd_box(12800, 64000), hdlr_box("vide", "VideoHandler"),
                 stsd_box(avc1_entry(1280, 720, avcc_box(77, 0, 31))), stts_box(125, 512),
                 stsz_box(2400, 125));
    const Bytes audio_trak =
        trak_box(tkhd_box(2, 5000, 0, 0), mdhd_box(48000, 240000), hdlr_box("soun", "SoundHandler"),
                 stsd_box(mp4a_entry(2, 48000, esds_box(96000, 2))), stts_box(235, 1024),
                 stsz_box(300, 235));
    fx.bytes = assemble_mp4(1000, 5000, {video_trak, audio_trak});

    StreamDescriptor video;
    video.kind = StreamKind::video;
    video.index = 0;
    video.fields.set("codec_name", std::string("avc1"));
    video.fields.set("codec_type", std::string("video"));
    video.fields.set("width", std::int64_t{1280});
    video.fields.set("height", std::int64_t{720});
    video.fields.set("profile", std::string("Main"));
    video.fields.set("level", std::int64_t{31});
    video.fields.set("duration", 5.0);
    video.fields.set("avg_frame_rate", Rational{25, 1});
    video.fields.set("nb_frames", std::int64_t{125});
    video.fields.set("bit_rate", std::int64_t{480000});
    StreamDescriptor audio;
    audio.kind = StreamKind::audio;
    audio.index = 1;
    audio.fields.set("codec_name", std::string("mp4a"));
    audio.fields.set("codec_type", std::string("audio"));
    audio.fields.set("channels", std::int64_t{2});
    audio.fields.set("sample_rate", std::int64_t{48000});
    audio.fields.set("bit_rate", std::int64_t{96000});
    audio.fields.set("profile", std::string("LC"));
    audio.fields.set("duration", 5.0);
    fx.expected.streams.push_back(video);
    fx.expected.streams.push_back(audio);
    set_container_fields(fx.expected, "mov,mp4,m4a,3gp,3g2,mj2", 5.0, fx.bytes.size(), 2, true);
    fx.golden_json = record_to_canonical_json(fx.expected);

    json video_stream{{"index", 0},
                      {"codec_name", "avc1"},
                      {"codec_type", "video"},
                      {"profile", "Main"},
                      {"level", 31},
                      {"width", 1280},
                      {"height", 720},
                      {"avg_frame_rate", "25/1"},
                      {"bit_rate", "480000"},
                      {"nb_frames", "125"},
                      {"duration", "5.000000"}};
    json audio_stream{{"index", 1},
                      {"codec_name", "mp4a"},
                      {"codec_type", "audio"},
                      {"profile", "LC"},
                      {"sample_rate", "48000"},
                      {"channels", 2},
                      {"bit_rate", "96000"},
                      {"duration", "5.000000"}};
    fx.probe_json = dump(json{{"streams", json::array({video_stream, audio_stream})},
                              {"format", probe_format_object(fx.expected, true)}});
    return fx;
}

Fixture make_vp8_video_fixture() {
    Fixture fx;
    fx.file_name = "vp8_video.mkv";

    Bytes header_payload;
    header_payload.raw(ebml_uint(0x4286, 1)).raw(ebml_string(0x4282, "matroska")).raw(ebml_uint(0x4287, 4));
    Bytes info_payload;
    info_payload.raw(ebml_uint(0x2AD7B1, 1'000'000)).raw(ebml_float4(0x4489, 5000.0f));
    info_payload.raw(ebml_string(0x4D80, "fixturemux")).raw(ebml_string(0x5741, "fixturemux"));
    Bytes video_payload;
    video_payload.raw(ebml_uint(0xB0, 320)).raw(ebml_uint(0xBA, 240));
    Bytes track_payload;
    track_payload.raw(ebml_uint(0xD7, 1)).raw(ebml_uint(0x83, 1)).raw(ebml_string(0x86, "V_VP8"));
    track_payload.raw(ebml_element(0xE0, video_payload));
    Bytes tracks_payload;
    tracks_payload.raw(ebml_element(0xAE, track_payload));
    Bytes segment_payload;
    segment_payload.raw(ebml_element(0x1549A966, info_payload));
    segment_payload.raw(ebml_element(0x1654AE6B, tracks_payload));
    Bytes file;
    file.raw(ebml_element(0x1A45DFA3, header_payload)).raw(ebml_element(0x18538067, segment_payload));
    fx.bytes = file.data();

    StreamDescriptor video;
    video.kind = StreamKind::video;
    video.index = 0;
    video.fields.set("track_number", std::int64_t{1});
    video.fields.set("codec_name", std::string("V_VP8"));
    video.fields.set("width", std::int64_t{320});
    video.fields.set("height", std::int64_t{240});
    video.fields.set("codec_type", std::string("video"));
    fx.expected.streams.push_back(video);
    set_container_fields(fx.expected, "matroska,webm", 5000.0 * 1'000'000.0 / 1e9, fx.bytes.size(), 1,
                         false);
    fx.golden_json = record_to_canonical_json(fx.expected);

    json stream{{"index", 0},
                {"codec_name", "V_VP8"},
                {"codec_type", "video"},
                {"width", 320},
                {"height", 240}};
    fx.probe_json = dump(json{{"streams", json::array({stream})},
                              {"format", probe_format_object(fx.expected, false)}});
    return fx;
}

Fixture make_vorbis_subtitle_fixture() {
    Fixture fx;
    fx.file_name = "vorbis_subtitle.mkv";

    Bytes header_payload;
    header_payload.raw(ebml_uint(0x4286, 1)).raw(ebml_string(0x4282, "matroska")).raw(ebml_uint(0x4287, 4));
    Bytes info_payload;  // no TimestampScale element: the 1e6 default applies
    info_payload.raw(ebml_float4(0x4489, 90000.0f));
    Bytes audio_payload;
    audio_payload.raw(ebml_float4(0xB5, 48000.0f)).raw(ebml_uint(0x9F, 2));
    Bytes audio_track;
    audio_track.raw(ebml_uint(0xD7, 1)).raw(ebml_uint(0x83, 2)).raw(ebml_string(0x86, "A_VORBIS"));
    audio_track.raw(ebml_element(0xE1, audio_payload));
    Bytes subtitle_track;
    subtitle_track.raw(ebml_uint(0xD7, 2)).raw(ebml_uint(0x83, 17)).raw(ebml_string(0x86, "S_TEXT/UTF8"));
    Bytes tracks_payload;
    tracks_payload.raw(ebml_element(0xAE, audio_track)).raw(ebml_element(0xAE, subtitle_track));
    Bytes segment_payload;
    segment_payload.raw(ebml_element(0x1549A966, info_payload));
    segment_payload.raw(ebml_element(0x1654AE6B, tracks_payload));
    Bytes file;
    file.raw(ebml_element(0x1A45DFA3, header_payload)).raw(ebml_element(0x18538067, segment_payload));
    fx.bytes = file.data();

    StreamDescriptor audio;
    audio.kind = StreamKind::audio;
    audio.index = 0;
    audio.fields.set("track_number", std::int64_t{1});
    audio.fields.set("codec_name", std::string("A_VORBIS"));
    audio.fields.set("sample_rate", 48000.0);
    audio.fields.set("channels", std::int64_t{2});
    audio.fields.set("codec_type", std::string("audio"));
    StreamDescriptor subtitle;
    subtitle.kind = StreamKind::subtitle;
    subtitle.index = 1;
    subtitle.fields.set("track_number", std::int64_t{2});
    subtitle.fields.set("codec_name", std::string("S_TEXT/UTF8"));
    subtitle.fields.set("codec_type", std::string("subtitle"));
    fx.expected.streams.push_back(audio);
    fx.expected.streams.push_back(subtitle);
    set_container_fields(fx.expected, "matroska,webm", 90000.0 * 1'000'000.0 / 1e9, fx.bytes.size(), 2,
                         false);
    fx.golden_json = record_to_canonical_json(fx.expected);

    json audio_stream{{"index", 0},
                      {"codec_name", "A_VORBIS"},
                      {"codec_type", "audio"},
                      {"sample_rate", "48000"},
                      {"channels", 2}};
    json subtitle_stream{{"index", 1}, {"codec_name", "S_TEXT/UTF8"}, {"codec_type", "subtitle"}};
    fx.probe_json = dump(json{{"streams", json::array({audio_stream, subtitle_stream})},
                              {"format", probe_format_object(fx.expected, false)}});
    return fx;
}

}  // namespace

const std::vector<Fixture>& container_fixtures() {
    static const std::vector<Fixture> fixtures = {
        make_avc_video_fixture(),
        make_aac_audio_fixture(),
        make_two_track_fixture(),
        make_vp8_video_fixture(),
        make_vorbis_subtitle_fixture(),
    };
    return fixtures;
}

std::vector<std::uint8_t> truncated_moov_mp4() {
    // cut the avc fixture inside the moov payload: the moov size field now
    // exceeds what remains
    auto bytes = make_avc_video_fixture().bytes;
    bytes.resize(32 + 60);  // ftyp is 32 bytes; keep the moov header + a bit
    return bytes;
}

std::vector<std::uint8_t> avi_junk_bytes() {
    Bytes b;
    b.ascii("RIFF").u32(0x2000).ascii("AVI LIST").zeros(48);
    return b.data();
}

std::string avi_sidecar_report() {
    json stream{{"index", 0},
                {"codec_name", "mpeg4"},
                {"codec_type", "video"},
                {"width", 720},
                {"height", 480},
                {"pix_fmt", "yuv420p"},
                {"avg_frame_rate", "30000/1001"},
                {"bit_rate", "1500000"},
                {"duration", "30.030000"}};
    json format{{"format_name", "avi"},
                {"duration", "30.030000"},
                {"size", "5685248"},
                {"bit_rate", "1514659"},
                {"nb_streams", 1},
                {"tags", {{"encoder", "Lavf57.83.100"}}}};
    return dump(json{{"streams", json::array({stream})}, {"format", format}});
}

std::string two_stream_probe_report() {
    json video{{"index", 0},
               {"codec_name", "h264"},
               {"codec_type", "video"},
               {"width", 1920},
               {"height", 1080},
               {"pix_fmt", "yuvj420p"},
               {"avg_frame_rate", "30000/1001"},
               {"bit_rate", "16000000"},
               {"nb_frames", "901"},
               {"tags", {{"creation_time", "2018-03-10T11:02:45.000000Z"}}}};
    json audio{{"index", 1},
               {"codec_name", "aac"},
               {"codec_type", "audio"},
               {"sample_rate", "48000"},
               {"channels", 2},
               {"bit_rate", "192000"}};
    json format{{"format_name", "mov,mp4,m4a,3gp,3g2,mj2"},
                {"duration", "30.063333"},
                {"size", "61312512"},
                {"bit_rate", "16316108"},
                {"nb_streams", 2},
                {"tags", {{"encoder", "Lavf57.83.100"}, {"major_brand", "mp42"}}}};
    return dump(json{{"streams", json::array({video, audio})}, {"format", format}});
}

}  // namespace streamlens::testsupport
