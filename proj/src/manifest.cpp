#include "fimlab/manifest.hpp"

#include <ctime>
#include <fstream>

#include "fimlab/errors.hpp"
#include "fimlab/version.hpp"

namespace fimlab {

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot open: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw format_error(path + ": expected key=value, got '" + line + "'");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

void RunManifest::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw io_error("cannot open for writing: " + path);
  f << "format=fimlab-run\n";
  f << "version=1\n";
  f << "software=" << kVersionString << "\n";
  std::time_t now = std::time(nullptr);
  char stamp[64];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  f << "created=" << stamp << "\n";
  f << "argc=" << argv.size() << "\n";
  for (std::size_t i = 0; i < argv.size(); ++i)
    f << "arg" << i << "=" << argv[i] << "\n";
  for (const auto& [k, v] : info) f << k << "=" << v << "\n";
  if (!f) throw io_error("short write: " + path);
}

RunManifest RunManifest::load(const std::string& path) {
  auto kv = read_key_value_file(path);
  if (kv.count("format") == 0 || kv["format"] != "fimlab-run")
    throw format_error(path + ": not a fimlab run manifest");
  RunManifest m;
  if (kv.count("argc") == 0) throw format_error(path + ": missing argc");
  std::size_t argc = std::stoul(kv["argc"]);
  for (std::size_t i = 0; i < argc; ++i) {
    std::string key = "arg" + std::to_string(i);
    if (kv.count(key) == 0) throw format_error(path + ": missing " + key);
    m.argv.push_back(kv[key]);
    kv.erase(key);
  }
  for (const char* k : {"format", "version", "software", "created", "argc"})
    kv.erase(k);
  m.info = std::move(kv);
  return m;
}

}  // namespace fimlab
