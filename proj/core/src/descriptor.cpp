#include "streamlens/descriptor.hpp"

#include <charconv>
#include <cmath>

namespace streamlens {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::optional<double> parse_full_double(std::string_view text) {
    if (text.empty()) return std::nullopt;
    double out = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    if (!std::isfinite(out)) return std::nullopt;
    return out;
}

}  // namespace

std::string value_to_string(const DescriptorValue& value) {
    switch (value.index()) {
        case 0: return std::get<std::string>(value);
        case 1: return std::to_string(std::get<std::int64_t>(value));
        case 2: return format_double(std::get<double>(value));
        default: {
            const auto& r = std::get<Rational>(value);
            return std::to_string(r.num) + "/" + std::to_string(r.den);
        }
    }
}

std::optional<double> value_as_number(const DescriptorValue& value) {
    switch (value.index()) {
        case 1: return static_cast<double>(std::get<std::int64_t>(value));
        case 2: {
            const double v = std::get<double>(value);
            return std::isfinite(v) ? std::optional<double>(v) : std::nullopt;
        }
        case 3: {
            const auto& r = std::get<Rational>(value);
            if (r.den == 0) return std::nullopt;
            const double v = r.value();
            return std::isfinite(v) ? std::optional<double>(v) : std::nullopt;
        }
        default: break;
    }
    const auto& text = std::get<std::string>(value);
    if (auto direct = parse_full_double(text)) return direct;
    // "num/den" rational text, the probe-report form of frame rates
    const auto slash = text.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 >= text.size()) return std::nullopt;
    const auto num = parse_full_double(text.substr(0, slash));
    const auto den = parse_full_double(text.substr(slash + 1));
    if (!num || !den || *den == 0.0) return std::nullopt;
    const double v = *num / *den;
    return std::isfinite(v) ? std::optional<double>(v) : std::nullopt;
}

const char* stream_kind_name(StreamKind kind) {
    switch (kind) {
        case StreamKind::video: return "video";
        case StreamKind::audio: return "audio";
        case StreamKind::subtitle: return "subtitle";
        case StreamKind::data: return "data";
    }
    return "data";
}

void FieldMap::set(std::string name, DescriptorValue value) {
    for (auto& entry : entries_) {
        if (entry.first == name) {
            entry.second = std::move(value);
            return;
        }
    }
    entries_.emplace_back(std::move(name), std::move(value));
}

const DescriptorValue* FieldMap::find(const std::string& name) const {
    for (const auto& entry : entries_) {
        if (entry.first == name) return &entry.second;
    }
    return nullptr;
}

std::string sanitize_utf8(std::string_view raw) {
    static constexpr const char* kReplacement = "\xEF\xBF\xBD";  // U+FFFD
    std::string out;
    out.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
        const auto byte = static_cast<unsigned char>(raw[i]);
        std::size_t len = 0;
        std::uint32_t min_cp = 0;
        if (byte < 0x80) {
            out.push_back(static_cast<char>(byte));
            ++i;
            continue;
        } else if ((byte & 0xE0) == 0xC0) {
            len = 2;
            min_cp = 0x80;
        } else if ((byte & 0xF0) == 0xE0) {
            len = 3;
            min_cp = 0x800;
        } else if ((byte & 0xF8) == 0xF0) {
            len = 4;
            min_cp = 0x10000;
        } else {
            out += kReplacement;
            ++i;
            continue;
        }
        if (i + len > raw.size()) {
            out += kReplacement;
            ++i;
            continue;
        }
        std::uint32_t cp = byte & (0xFF >> (len + 1));
        bool ok = true;
        for (std::size_t k = 1; k < len; ++k) {
            const auto cont = static_cast<unsigned char>(raw[i + k]);
            if ((cont & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (cont & 0x3F);
        }
        // reject overlong forms, surrogates and out-of-range code points
        if (ok && (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))) ok = false;
        if (ok) {
            out.append(raw.substr(i, len));
            i += len;
        } else {
            out += kReplacement;
            ++i;
        }
    }
    return out;
}

}  // namespace streamlens
