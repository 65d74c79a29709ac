#include "streamlens/dataset.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "streamlens/error.hpp"

namespace streamlens {

std::filesystem::path DatasetManifest::resolve(const ManifestEntry& entry) const {
    const std::filesystem::path p(entry.path);
    return p.is_absolute() ? p : base_dir / p;
}

DatasetManifest manifest_from_csv(std::string_view text, std::string name,
                                  std::filesystem::path base_dir) {
    DatasetManifest manifest;
    manifest.name = std::move(name);
    manifest.base_dir = std::move(base_dir);

    std::istringstream in{std::string(text)};
    std::string line;
    bool saw_header = false;
    std::set<std::string> seen_paths;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        // label is the field after the last comma, so paths may contain commas
        const auto comma = line.rfind(',');
        if (comma == std::string::npos) {
            throw Error(Errc::bad_manifest, "line " + std::to_string(line_no) + ": expected path,label");
        }
        std::string path = line.substr(0, comma);
        std::string label = line.substr(comma + 1);
        if (!saw_header) {
            if (path != "path" || label != "label") {
                throw Error(Errc::bad_manifest, "missing required header row \"path,label\"");
            }
            saw_header = true;
            continue;
        }
        if (path.empty()) {
            throw Error(Errc::bad_manifest, "line " + std::to_string(line_no) + ": empty path");
        }
        if (!seen_paths.insert(path).second) {
            throw Error(Errc::bad_manifest, "duplicate path: " + path);
        }
        ManifestEntry entry;
        entry.path = std::move(path);
        if (label == "0") {
            entry.label = Label::pristine;
        } else if (label == "1") {
            entry.label = Label::manipulated;
        } else if (!label.empty()) {
            throw Error(Errc::bad_manifest,
                        "line " + std::to_string(line_no) + ": label must be 0, 1 or empty");
        }
        manifest.entries.push_back(std::move(entry));
    }
    if (!saw_header) {
        throw Error(Errc::bad_manifest, "empty manifest");
    }
    return manifest;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::io_error, "cannot open manifest " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto base = path.parent_path();
    if (base.empty()) base = ".";
    return manifest_from_csv(buffer.str(), path.stem().string(), base);
}

std::string manifest_to_csv(const DatasetManifest& manifest) {
    std::string out = "path,label\n";
    for (const auto& entry : manifest.entries) {
        out += entry.path;
        out += ',';
        if (entry.label) out += *entry.label == Label::manipulated ? '1' : '0';
        out += '\n';
    }
    return out;
}

}  // namespace streamlens
