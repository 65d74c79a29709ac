#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "streamlens/descriptor.hpp"

namespace streamlens {

enum class ContainerFormat { isobmff, matroska, probe_report, unknown };

const char* container_format_name(ContainerFormat format);

// Sniffs the payload: "ftyp" at bytes 4..8, the EBML magic 1A 45 DF A3 at the
// start, or a structured text document with a top-level "streams" key.
// Anything else is unknown (a value, not an error).
ContainerFormat detect_format(std::span<const std::uint8_t> bytes);

// Walks the ISOBMFF box tree (ftyp/moov/trak/...) and emits one
// StreamDescriptor per track. Throws TruncatedBox / MissingMoov.
DescriptorRecord parse_isobmff(std::span<const std::uint8_t> bytes, std::string source_id = {});

// Walks EBML Segment > Info / Tracks. Throws MalformedVarint /
// TruncatedElement.
DescriptorRecord parse_matroska(std::span<const std::uint8_t> bytes, std::string source_id = {});

// Ingests a probe-report document: {"streams":[...], "format":{...}} with
// nested "tags" objects flattened under a "tags." prefix. Numbers kept as
// strings stay text; the feature codec decides numeric vs categorical later.
// Throws MalformedDocument / MissingStreams.
DescriptorRecord parse_probe_report(std::string_view text, std::string source_id = {});

// Dispatches on detect_format; unknown binary formats fall back to a sidecar
// report at <path>.probe. Throws UnsupportedFormat when neither applies.
DescriptorRecord extract(const std::filesystem::path& path);

DescriptorRecord extract_bytes(std::span<const std::uint8_t> bytes, std::string source_id);

}  // namespace streamlens
