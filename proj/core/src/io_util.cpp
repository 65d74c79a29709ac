#include "streamlens/io_util.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "streamlens/error.hpp"

namespace streamlens {

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    const auto parent = path.parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec);
    }
    const auto temp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(Errc::io_error, "cannot write " + temp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw Error(Errc::io_error, "short write to " + temp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(temp, path, ec);
    if (ec) {
        throw Error(Errc::io_error, "cannot move " + temp.string() + " to " + path.string());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::io_error, "cannot open " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace streamlens
