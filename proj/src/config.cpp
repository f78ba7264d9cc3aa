#include "graphembed/config.hpp"

#include <fstream>
#include <sstream>

#include "graphembed/errors.hpp"

namespace graphembed {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

IniConfig IniConfig::parse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << is.rdbuf();
  return parse_string(buffer.str());
}

IniConfig IniConfig::parse_string(const std::string& text) {
  IniConfig cfg;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw InvalidParams("config line " + std::to_string(lineno) +
                            ": unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw InvalidParams("config line " + std::to_string(lineno) +
                          ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw InvalidParams("config line " + std::to_string(lineno) + ": empty key");
    cfg.items_.push_back({section, key, value});
  }
  return cfg;
}

bool IniConfig::has(const std::string& section, const std::string& key) const {
  for (const auto& item : items_)
    if (item[0] == section && item[1] == key) return true;
  return false;
}

std::string IniConfig::get_string(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
  for (const auto& item : items_)
    if (item[0] == section && item[1] == key) return item[2];
  return fallback;
}

long long IniConfig::get_int(const std::string& section, const std::string& key,
                             long long fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get_string(section, key);
  try {
    return std::stoll(v);
  } catch (const std::exception&) {
    throw InvalidParams("config [" + section + "] " + key + ": '" + v +
                        "' is not an integer");
  }
}

double IniConfig::get_double(const std::string& section, const std::string& key,
                             double fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get_string(section, key);
  try {
    return std::stod(v);
  } catch (const std::exception&) {
    throw InvalidParams("config [" + section + "] " + key + ": '" + v +
                        "' is not a number");
  }
}

std::vector<double> IniConfig::get_double_list(const std::string& section,
                                               const std::string& key) const {
  return parse_double_list(get_string(section, key));
}

std::vector<std::pair<std::string, std::string>> IniConfig::entries(
    const std::string& section) const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& item : items_)
    if (item[0] == section) out.emplace_back(item[1], item[2]);
  return out;
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::string token;
  std::istringstream is(text);
  while (is >> token) tokens.push_back(token);
  return tokens;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::string piece;
  std::string normalized = text;
  for (char& c : normalized)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream is(normalized);
  while (is >> piece) {
    try {
      out.push_back(std::stod(piece));
    } catch (const std::exception&) {
      throw InvalidParams("expected a number, got '" + piece + "'");
    }
  }
  return out;
}

}  // namespace graphembed
