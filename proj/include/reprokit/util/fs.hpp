// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

namespace reprokit {

namespace fs = std::filesystem;

std::string read_text_file(const fs::path& path);           // throws MissingFile / IoError
void write_text_file(const fs::path& path, const std::string& content);  // creates parents

// Recursive copy; follows the source tree exactly. Throws IoError.
void copy_tree(const fs::path& from, const fs::path& to);

// True when `p`, lexically normalized against `root`, stays inside `root`.
bool path_within(const fs::path& root, const fs::path& p);

// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& prefix = "reprokit");
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

} // namespace reprokit
