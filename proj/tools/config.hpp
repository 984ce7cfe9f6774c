#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace aniso::cli {

/// Flat `key = value` configuration. Every key a command reads must be declared with a
/// default; keys present in the file but never declared are rejected by `finish`.
class RunConfig {
 public:
  RunConfig(std::string command, std::filesystem::path out, std::uint64_t seed);

  /// Loads `key = value` lines; `#` starts a comment. Duplicate keys are usage errors.
  void load(const std::filesystem::path& path);
  void set(const std::string& key, const std::string& value);

  std::string text(const std::string& key, const std::string& fallback);
  std::string required_text(const std::string& key);
  double real(const std::string& key, double fallback);
  int integer(const std::string& key, int fallback);
  bool flag(const std::string& key, bool fallback);
  std::vector<int> integers(const std::string& key, const std::vector<int>& fallback);

  /// Rejects undeclared keys and writes `manifest.txt` with the resolved configuration.
  void finish();

  const std::string& command() const { return command_; }
  const std::filesystem::path& out() const { return out_; }
  std::uint64_t seed() const { return seed_; }
  /// Path of a file named in the configuration, resolved against the config file's directory.
  std::filesystem::path input_path(const std::string& value) const;

 private:
  std::string lookup(const std::string& key, const std::string& fallback);

  std::string command_;
  std::filesystem::path out_;
  std::uint64_t seed_;
  std::filesystem::path base_;
  std::map<std::string, std::string> given_;
  std::map<std::string, std::string> resolved_;
};

}  // namespace aniso::cli
