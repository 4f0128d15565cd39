#include "majsim/cli/format.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <thread>

#include <boost/crc.hpp>

#include "majsim/errors.hpp"

namespace majsim::cli {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::uint32_t crc32(std::string_view bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

std::string crc32_hex(std::string_view bytes) {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", crc32(bytes));
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

OutputDir::OutputDir(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir_.string() + ": " + ec.message());
  // A stale manifest would describe files this run is about to replace.
  fs::remove(dir_ / "manifest.json", ec);
}

namespace {

void write_atomic(const fs::path& target, std::string_view content) {
  fs::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw std::runtime_error("cannot move " + tmp.string() + " into place: " + ec.message());
}

}  // namespace

void OutputDir::write(const std::string& name, std::string_view content) {
  write_atomic(dir_ / name, content);
  files_.push_back({name, content.size(), crc32_hex(content)});
}

nlohmann::json OutputDir::write_manifest(nlohmann::json manifest) {
  nlohmann::json inventory = nlohmann::json::array();
  for (const auto& f : files_) inventory.push_back({{"name", f.name}, {"bytes", f.bytes}, {"crc32", f.crc32}});
  manifest["files"] = std::move(inventory);
  write_atomic(dir_ / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

unsigned sim_threads() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("SIM_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  unsigned value = 0;
  const std::string_view s(env);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || value == 0) {
    throw ValidationError("SIM_THREADS must be a positive integer, got '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace majsim::cli
