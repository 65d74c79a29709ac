#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "streamlens/error.hpp"

namespace streamlens::detail {

// Bounds-checked big-endian cursor. Every read is validated against the
// window, so corrupted size fields surface as typed errors, never as
// out-of-bounds access.
class ByteReader {
public:
    ByteReader(std::span<const std::uint8_t> bytes, std::uint64_t base_offset, Errc truncation_code)
        : bytes_(bytes), base_(base_offset), code_(truncation_code) {}

    std::uint64_t offset() const { return base_ + pos_; }
    std::uint64_t remaining() const { return bytes_.size() - pos_; }
    bool at_end() const { return pos_ == bytes_.size(); }

    std::uint8_t peek_u8() const {
        require(1);
        return bytes_[pos_];
    }

    std::uint8_t read_u8() {
        require(1);
        return bytes_[pos_++];
    }

    std::uint16_t read_u16() { return static_cast<std::uint16_t>(read_be(2)); }
    std::uint32_t read_u32() { return static_cast<std::uint32_t>(read_be(4)); }
    std::uint64_t read_u64() { return read_be(8); }

    std::uint64_t read_be(std::size_t n) {
        require(n);
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < n; ++i) v = (v << 8) | bytes_[pos_ + i];
        pos_ += n;
        return v;
    }

    std::string_view read_bytes(std::uint64_t n) {
        require(n);
        std::string_view out(reinterpret_cast<const char*>(bytes_.data() + pos_), static_cast<std::size_t>(n));
        pos_ += static_cast<std::size_t>(n);
        return out;
    }

    void skip(std::uint64_t n) {
        require(n);
        pos_ += static_cast<std::size_t>(n);
    }

    // Sub-window over the next n bytes; the parent cursor advances past it.
    ByteReader sub(std::uint64_t n) {
        require(n);
        ByteReader child(bytes_.subspan(pos_, static_cast<std::size_t>(n)), base_ + pos_, code_);
        pos_ += static_cast<std::size_t>(n);
        return child;
    }

    void require(std::uint64_t n) const {
        if (n > bytes_.size() - pos_) {
            throw ParseError(code_, "need " + std::to_string(n) + " bytes, " +
                                        std::to_string(bytes_.size() - pos_) + " remain",
                             base_ + pos_);
        }
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::uint64_t base_ = 0;
    std::size_t pos_ = 0;
    Errc code_;
};

}  // namespace streamlens::detail
