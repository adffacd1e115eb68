// SPDX-License-Identifier: Apache-2.0
//
// Minimal INI-style config reader: `[section]` headers, `key = value`
// lines, `#` or `;` comments.

#pragma once

#include <map>
#include <string>
#include <vector>

namespace lvqe {

class ConfigFile {
 public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;

  /// Throwing getters (missing key → std::runtime_error naming the key).
  std::string get(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  long get_long(const std::string& section, const std::string& key) const;

  /// Defaulting getters.
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  long get_long_or(const std::string& section, const std::string& key,
                   long fallback) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections()
      const {
    return data_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> data_;
};

/// Split on whitespace and/or the given separator characters.
std::vector<std::string> split_fields(const std::string& s,
                                      const std::string& extra_seps = "");

}  // namespace lvqe
