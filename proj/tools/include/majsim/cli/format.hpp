#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace majsim::cli {

// Shortest round-trip decimal form, independent of the C locale.
std::string format_double(double v);

std::uint32_t crc32(std::string_view bytes);
std::string crc32_hex(std::string_view bytes);

// UTC wall clock as 2024-01-02T03:04:05Z.
std::string utc_timestamp();

struct FileRecord {
  std::string name;
  std::uintmax_t bytes = 0;
  std::string crc32;
};

// Collects the files of one run. Each file is written to a temporary name and
// renamed into place; the manifest is written last, so a directory without
// manifest.json is an incomplete run.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path dir);

  const std::filesystem::path& path() const { return dir_; }
  const std::vector<FileRecord>& files() const { return files_; }

  void write(const std::string& name, std::string_view content);
  // Adds the file inventory to `manifest` and writes manifest.json.
  nlohmann::json write_manifest(nlohmann::json manifest);

 private:
  std::filesystem::path dir_;
  std::vector<FileRecord> files_;
};

// SIM_THREADS when set (a positive integer), otherwise the hardware concurrency.
unsigned sim_threads();

}  // namespace majsim::cli
