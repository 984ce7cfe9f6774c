#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "aniso/error.hpp"
#include "aniso/io.hpp"

namespace aniso::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  require(ec == std::errc() && ptr == v.data() + v.size(), ErrorKind::usage, "key " + key + ": not a number: " + v);
  return x;
}

int parse_int(const std::string& key, const std::string& v) {
  int x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  require(ec == std::errc() && ptr == v.data() + v.size(), ErrorKind::usage, "key " + key + ": not an integer: " + v);
  return x;
}

}  // namespace

RunConfig::RunConfig(std::string command, std::filesystem::path out, std::uint64_t seed)
    : command_(std::move(command)), out_(std::move(out)), seed_(seed), base_(std::filesystem::current_path()) {}

void RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::io, "cannot open config " + path.string());
  base_ = std::filesystem::absolute(path).parent_path();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = path.string() + ":" + std::to_string(lineno);
    require(eq != std::string::npos, ErrorKind::usage, where + ": expected `key = value`");
    const std::string key = trim(line.substr(0, eq));
    require(!key.empty(), ErrorKind::usage, where + ": empty key");
    require(!given_.contains(key), ErrorKind::usage, where + ": duplicate key " + key);
    given_[key] = trim(line.substr(eq + 1));
  }
}

void RunConfig::set(const std::string& key, const std::string& value) { given_[key] = value; }

std::string RunConfig::lookup(const std::string& key, const std::string& fallback) {
  const auto it = given_.find(key);
  const std::string v = it == given_.end() ? fallback : it->second;
  resolved_[key] = v;
  return v;
}

std::string RunConfig::text(const std::string& key, const std::string& fallback) { return lookup(key, fallback); }

std::string RunConfig::required_text(const std::string& key) {
  require(given_.contains(key), ErrorKind::usage, "missing required key " + key);
  return lookup(key, {});
}

double RunConfig::real(const std::string& key, double fallback) {
  return parse_real(key, lookup(key, format_double(fallback)));
}

int RunConfig::integer(const std::string& key, int fallback) {
  return parse_int(key, lookup(key, std::to_string(fallback)));
}

bool RunConfig::flag(const std::string& key, bool fallback) {
  const std::string v = lookup(key, fallback ? "true" : "false");
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  fail(ErrorKind::usage, "key " + key + ": expected true or false, got " + v);
}

std::vector<int> RunConfig::integers(const std::string& key, const std::vector<int>& fallback) {
  std::string joined;
  for (std::size_t i = 0; i < fallback.size(); ++i) joined += (i ? "," : "") + std::to_string(fallback[i]);
  const std::string v = lookup(key, joined);
  std::vector<int> out;
  std::stringstream ss(v);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_int(key, trim(item)));
  require(!out.empty(), ErrorKind::usage, "key " + key + ": empty list");
  return out;
}

std::filesystem::path RunConfig::input_path(const std::string& value) const {
  const std::filesystem::path p(value);
  return p.is_absolute() ? p : base_ / p;
}

void RunConfig::finish() {
  for (const auto& [key, value] : given_)
    require(resolved_.contains(key), ErrorKind::usage, "unknown key " + key + " for command " + command_);
  std::filesystem::create_directories(out_);
  std::ofstream m(out_ / "manifest.txt", std::ios::binary);
  require(static_cast<bool>(m), ErrorKind::io, "cannot write " + (out_ / "manifest.txt").string());
  m << "command = " << command_ << "\nseed = " << seed_ << "\n";
  for (const auto& [key, value] : resolved_) m << key << " = " << value << "\n";
  require(static_cast<bool>(m), ErrorKind::io, "write failed for " + (out_ / "manifest.txt").string());
}

}  // namespace aniso::cli
