#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "streamlens/descriptor.hpp"

namespace streamlens::testsupport {

// Byte-level builders for crafting container fixtures in tests.
class Bytes {
public:
    Bytes& u8(std::uint8_t v);
    Bytes& u16(std::uint16_t v);
    Bytes& u24(std::uint32_t v);
    Bytes& u32(std::uint32_t v);
    Bytes& u64(std::uint64_t v);
    Bytes& f32(float v);
    Bytes& f64(double v);
    Bytes& raw(const std::vector<std::uint8_t>& data);
    Bytes& raw(const Bytes& other);
    Bytes& ascii(std::string_view text);
    Bytes& zeros(std::size_t count);

    const std::vector<std::uint8_t>& data() const { return data_; }
    std::size_t size() const { return data_.size(); }

private:
    std::vector<std::uint8_t> data_;
};

// ISOBMFF box: u32 size + fourcc + payload.
Bytes mp4_box(std::string_view type, const Bytes& payload);

// EBML element: raw id bytes + size varint + payload.
Bytes ebml_element(std::uint64_t element_id, const Bytes& payload);
Bytes ebml_uint(std::uint64_t element_id, std::uint64_t value);
Bytes ebml_float4(std::uint64_t element_id, float value);
Bytes ebml_string(std::uint64_t element_id, std::string_view value);

// One checked-in parser fixture: container bytes, the expected record built
// from the same construction parameters (never from the parser), its
// canonical golden dump and a reference-extractor style sidecar report.
struct Fixture {
    std::string file_name;
    std::vector<std::uint8_t> bytes;
    DescriptorRecord expected;  // source_id left empty
    std::string golden_json;
    std::string probe_json;
};

const std::vector<Fixture>& container_fixtures();

std::vector<std::uint8_t> truncated_moov_mp4();
std::vector<std::uint8_t> avi_junk_bytes();
std::string avi_sidecar_report();
std::string two_stream_probe_report();

}  // namespace streamlens::testsupport
