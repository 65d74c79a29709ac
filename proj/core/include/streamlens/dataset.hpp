#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "streamlens/features.hpp"

namespace streamlens {

struct ManifestEntry {
    std::string path;  // video path or probe-report path, relative to the manifest
    std::optional<Label> label;
};

// Two-column CSV with a required "path,label" header; label is 0, 1 or empty.
struct DatasetManifest {
    std::string name;
    std::filesystem::path base_dir;
    std::vector<ManifestEntry> entries;

    std::filesystem::path resolve(const ManifestEntry& entry) const;
};

DatasetManifest load_manifest(const std::filesystem::path& path);
DatasetManifest manifest_from_csv(std::string_view text, std::string name,
                                  std::filesystem::path base_dir);
std::string manifest_to_csv(const DatasetManifest& manifest);

}  // namespace streamlens
