#pragma once

#include "wingpitch/scenario.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace wingpitch {

/// Flat key = value configuration text ('#' comments, blank lines ignored).
/// Every key must be known; unknown or malformed keys fail before any
/// simulation starts.
class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::filesystem::path& path);
  static KeyValueConfig parse_text(const std::string& text,
                                   const std::string& origin = "<text>");

  bool has(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key, std::string fallback) const;
  std::vector<double> get_vector(const std::string& key,
                                 std::vector<double> fallback) const;

  // Keys never read by any get_* call; non-empty means a typo in the file.
  std::vector<std::string> unconsumed_keys() const;
  const std::string& origin() const { return origin_; }

 private:
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, bool> consumed_;
  std::string origin_;
};

// Applies a config file on top of the given base spec and validates the
// result. Throws std::invalid_argument / std::runtime_error with context.
ScenarioSpec apply_config(const KeyValueConfig& config, ScenarioSpec base);

// Full default configuration for a scenario, in the same format apply_config
// reads; parsing it back reproduces the defaults.
std::string default_config_text(ScenarioKind kind);

}  // namespace wingpitch
