#pragma once

#include <map>
#include <string>
#include <vector>

namespace fimlab {

/// Parses a line-oriented key=value file ('#' starts a comment line).
std::map<std::string, std::string> read_key_value_file(const std::string& path);

/// Record of one CLI run: the exact argument vector plus enough metadata to
/// reproduce every output file byte for byte (`fimlab rerun`). Timestamps
/// live only here, never in the data artifacts themselves.
struct RunManifest {
  std::vector<std::string> argv;
  std::map<std::string, std::string> info;  // seed, model parameters, outputs

  void save(const std::string& path) const;
  static RunManifest load(const std::string& path);
};

}  // namespace fimlab
