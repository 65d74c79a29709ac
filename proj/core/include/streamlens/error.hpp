#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace streamlens {

// Every failure the library reports deliberately. Callers branch on the code;
// the message carries context (file, byte offset, field name).
enum class Errc {
    // container parsing
    truncated_box,
    missing_moov,
    malformed_varint,
    truncated_element,
    malformed_document,
    missing_streams,
    unsupported_format,
    // encoding / learning
    empty_training_set,
    dimension_mismatch,
    single_class_input,
    degenerate_stratum,
    no_positives,
    // persistence / operator surface
    schema_version_mismatch,
    bad_manifest,
    bad_config,
    io_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + std::move(message)),
          code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

// Parser failures additionally carry the byte offset of the offending item.
class ParseError : public Error {
public:
    ParseError(Errc code, std::string message, std::uint64_t offset)
        : Error(code, std::move(message) + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::uint64_t offset() const { return offset_; }

private:
    std::uint64_t offset_;
};

}  // namespace streamlens
