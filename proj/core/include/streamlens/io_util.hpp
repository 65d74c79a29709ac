#pragma once

#include <filesystem>
#include <string>

namespace streamlens {

// Writes via a temp file in the same directory plus rename, so readers never
// observe a half-written artifact.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace streamlens
