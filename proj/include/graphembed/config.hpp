#pragma once

#include <string>
#include <utility>
#include <vector>

namespace graphembed {

// Minimal INI-style config: [section] headers, key = value lines, '#' or ';'
// comments. Keys keep file order within a section (repeated keys allowed).
class IniConfig {
 public:
  static IniConfig parse_file(const std::string& path);
  static IniConfig parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback = "") const;
  long long get_int(const std::string& section, const std::string& key,
                    long long fallback) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  std::vector<double> get_double_list(const std::string& section,
                                      const std::string& key) const;

  // All (key, value) pairs of a section, in file order.
  std::vector<std::pair<std::string, std::string>> entries(
      const std::string& section) const;

 private:
  // (section, key, value)
  std::vector<std::vector<std::string>> items_;
};

std::vector<std::string> split_tokens(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace graphembed
