#pragma once

// Flat sectioned key = value text format.
//
//   # comment            (also after a value: key = 1.5  # note)
//   [section]
//   key = value
//
// Keys before the first section header belong to the empty section. Blank
// lines are ignored. Keys and section names are case-sensitive.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace stvo {

struct KeyValueEntry {
  std::string section;
  std::string key;
  std::string value;
  std::size_t line = 0;
};

struct KeyValueFile {
  std::string source;  // file name used in diagnostics
  std::vector<KeyValueEntry> entries;

  /// "source:line" for messages.
  std::string where(const KeyValueEntry& entry) const;
};

/// Throws ConfigError with the line number on malformed lines or duplicate keys.
KeyValueFile parse_key_value(std::istream& in, const std::string& source = "<input>");
KeyValueFile load_key_value(const std::filesystem::path& path);

/// Strict conversions; ConfigError naming `where` on failure.
double parse_double(const std::string& text, const std::string& where);
long long parse_integer(const std::string& text, const std::string& where);
bool parse_bool(const std::string& text, const std::string& where);
/// Comma-separated list of doubles.
std::vector<double> parse_double_list(const std::string& text, const std::string& where);

}  // namespace stvo
