// SPDX-License-Identifier: Apache-2.0
#include "reprokit/util/fs.hpp"

#include "reprokit/errors.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace reprokit {

std::string read_text_file(const fs::path& path) {
    std::error_code ec;
    if (!fs::exists(path, ec)) throw MissingFile(path.string());
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create " + path.parent_path().string());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("short write to " + path.string());
}

void copy_tree(const fs::path& from, const fs::path& to) {
    std::error_code ec;
    fs::copy(from, to,
             fs::copy_options::recursive | fs::copy_options::copy_symlinks, ec);
    if (ec) throw IoError("copy " + from.string() + " -> " + to.string() + ": " + ec.message());
}

bool path_within(const fs::path& root, const fs::path& p) {
    fs::path base = root.lexically_normal();
    fs::path full = (p.is_absolute() ? p : base / p).lexically_normal();
    auto rit = base.begin();
    auto fit = full.begin();
    for (; rit != base.end(); ++rit, ++fit) {
        if (rit->empty()) continue;  // trailing slash artifact
        if (fit == full.end() || *fit != *rit) return false;
    }
    return true;
}

TempDir::TempDir(const std::string& prefix) {
    static std::mt19937_64 rng{std::random_device{}()};
    const fs::path base = fs::temp_directory_path();
    for (int attempt = 0; attempt < 64; ++attempt) {
        fs::path candidate = base / (prefix + "-" + std::to_string(rng()));
        std::error_code ec;
        if (fs::create_directory(candidate, ec)) {
            path_ = candidate;
            return;
        }
    }
    throw IoError("cannot create scratch directory under " + base.string());
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);  // best effort
}

} // namespace reprokit
