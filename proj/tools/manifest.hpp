#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ncgcp/io.hpp"

namespace ncgcp::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

/// Command, parameters, seed, input digests and output paths of one run.
struct RunManifest {
  std::string command;
  io::json parameters = io::json::object();
  std::optional<std::uint64_t> rng_seed;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  io::json results = io::json::object();

  io::json to_json() const;
  /// Writes <path>.manifest.json next to a data file.
  void write_sidecar(const std::string& path) const;
};

}  // namespace ncgcp::cli
