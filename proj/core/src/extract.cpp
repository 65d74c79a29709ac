#include <fstream>

#include <nlohmann/json.hpp>

#include "streamlens/error.hpp"
#include "streamlens/extract.hpp"

namespace streamlens {

namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::io_error, "cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw Error(Errc::io_error, "cannot read " + path.string());
    }
    return bytes;
}

}  // namespace

const char* container_format_name(ContainerFormat format) {
    switch (format) {
        case ContainerFormat::isobmff: return "isobmff";
        case ContainerFormat::matroska: return "matroska";
        case ContainerFormat::probe_report: return "probe_report";
        case ContainerFormat::unknown: return "unknown";
    }
    return "unknown";
}

ContainerFormat detect_format(std::span<const std::uint8_t> bytes) {
    if (bytes.size() >= 8 && bytes[4] == 'f' && bytes[5] == 't' && bytes[6] == 'y' && bytes[7] == 'p') {
        return ContainerFormat::isobmff;
    }
    if (bytes.size() >= 4 && bytes[0] == 0x1A && bytes[1] == 0x45 && bytes[2] == 0xDF && bytes[3] == 0xA3) {
        return ContainerFormat::matroska;
    }
    const auto doc = nlohmann::json::parse(bytes.begin(), bytes.end(), nullptr, /*allow_exceptions=*/false);
    if (!doc.is_discarded() && doc.is_object() && doc.contains("streams")) {
        return ContainerFormat::probe_report;
    }
    return ContainerFormat::unknown;
}

DescriptorRecord extract_bytes(std::span<const std::uint8_t> bytes, std::string source_id) {
    switch (detect_format(bytes)) {
        case ContainerFormat::isobmff:
            return parse_isobmff(bytes, std::move(source_id));
        case ContainerFormat::matroska:
            return parse_matroska(bytes, std::move(source_id));
        case ContainerFormat::probe_report:
            return parse_probe_report(
                std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
                std::move(source_id));
        case ContainerFormat::unknown:
            break;
    }
    throw Error(Errc::unsupported_format, "unrecognized container: " + source_id);
}

DescriptorRecord extract(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    const auto format = detect_format(bytes);
    if (format != ContainerFormat::unknown) {
        return extract_bytes(bytes, path.string());
    }
    // unknown binary format: fall back to a sidecar probe report
    const auto sidecar = std::filesystem::path(path.string() + ".probe");
    if (std::filesystem::exists(sidecar)) {
        const auto sidecar_bytes = read_file(sidecar);
        auto record = parse_probe_report(
            std::string_view(reinterpret_cast<const char*>(sidecar_bytes.data()), sidecar_bytes.size()),
            path.string());
        return record;
    }
    throw Error(Errc::unsupported_format, "unrecognized container and no sidecar report: " + path.string());
}

}  // namespace streamlens
