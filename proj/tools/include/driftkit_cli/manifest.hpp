#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace driftkit::cli {

struct InputDigest {
  std::string path;
  std::string sha256;
};

struct RunManifest {
  std::vector<std::string> command;  // argument echo without worker-count flags
  std::vector<InputDigest> inputs;
  std::string version;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> generator;
  std::string timestamp;  // ISO 8601 UTC; SOURCE_DATE_EPOCH wins over the clock
};

std::string sha256_file(const std::string& path);
std::string sha256_hex(const std::string& bytes);
std::string run_timestamp();
std::vector<std::string> strip_worker_flags(const std::vector<std::string>& args);

nlohmann::json to_json(const RunManifest& m);

}  // namespace driftkit::cli
