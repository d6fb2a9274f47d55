#include "stvo/key_value.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <utility>

#include "stvo/errors.hpp"

namespace stvo {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_name(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
  });
}

}  // namespace

std::string KeyValueFile::where(const KeyValueEntry& entry) const {
  return source + ":" + std::to_string(entry.line);
}

KeyValueFile parse_key_value(std::istream& in, const std::string& source) {
  KeyValueFile file;
  file.source = source;
  std::string section;
  std::set<std::pair<std::string, std::string>> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string loc = source + ":" + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(loc + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!valid_name(section)) throw ConfigError(loc + ": invalid section name '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(loc + ": expected 'key = value'");
    KeyValueEntry entry{section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no};
    if (!valid_name(entry.key)) throw ConfigError(loc + ": invalid key '" + entry.key + "'");
    if (entry.value.empty()) throw ConfigError(loc + ": missing value for '" + entry.key + "'");
    if (!seen.emplace(entry.section, entry.key).second) {
      throw ConfigError(loc + ": duplicate key '" + entry.key + "' in [" + section + "]");
    }
    file.entries.push_back(std::move(entry));
  }
  return file;
}

KeyValueFile load_key_value(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_key_value(in, path.string());
}

double parse_double(const std::string& text, const std::string& where) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(where + ": expected a number, got '" + text + "'");
  }
  return v;
}

long long parse_integer(const std::string& text, const std::string& where) {
  long long v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(where + ": expected an integer, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& text, const std::string& where) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(where + ": expected a boolean, got '" + text + "'");
}

std::vector<double> parse_double_list(const std::string& text, const std::string& where) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item =
        trim(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    out.push_back(parse_double(item, where));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace stvo
