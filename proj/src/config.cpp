#include "dhopf/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dhopf {

namespace {

[[noreturn]] void fail(const std::string& origin, int line, const std::string& message) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + message);
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Removes a trailing comment, respecting quoted strings.
std::string_view strip_comment(std::string_view s) {
  bool in_string = false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

double parse_number(std::string_view token, const std::string& origin, int line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    fail(origin, line, "expected a number, got '" + std::string(token) + "'");
  }
  return value;
}

std::string parse_quoted(std::string_view token, const std::string& origin, int line) {
  if (token.size() < 2 || token.front() != '"' || token.back() != '"') {
    fail(origin, line, "expected a quoted string, got '" + std::string(token) + "'");
  }
  return std::string(token.substr(1, token.size() - 2));
}

std::vector<std::string_view> split_array(std::string_view inner) {
  std::vector<std::string_view> items;
  size_t start = 0;
  bool in_string = false;
  for (size_t i = 0; i <= inner.size(); ++i) {
    if (i < inner.size() && inner[i] == '"') in_string = !in_string;
    if (i == inner.size() || (inner[i] == ',' && !in_string)) {
      const auto item = strip(inner.substr(start, i - start));
      if (!item.empty()) items.push_back(item);
      start = i + 1;
    }
  }
  return items;
}

ConfigValue parse_value(std::string_view token, const std::string& origin, int line) {
  if (token == "true") return true;
  if (token == "false") return false;
  if (token.front() == '"') return parse_quoted(token, origin, line);
  if (token.front() == '[') {
    if (token.back() != ']') fail(origin, line, "unterminated array");
    const auto items = split_array(token.substr(1, token.size() - 2));
    if (items.empty()) return std::vector<double>{};
    if (items.front().front() == '"') {
      std::vector<std::string> strings;
      for (const auto item : items) strings.push_back(parse_quoted(item, origin, line));
      return strings;
    }
    std::vector<double> numbers;
    for (const auto item : items) numbers.push_back(parse_number(item, origin, line));
    return numbers;
  }
  return parse_number(token, origin, line);
}

void format_number(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void format_value(std::string& out, const ConfigValue& value) {
  if (const auto* num = std::get_if<double>(&value)) {
    format_number(out, *num);
  } else if (const auto* flag = std::get_if<bool>(&value)) {
    out += *flag ? "true" : "false";
  } else if (const auto* str = std::get_if<std::string>(&value)) {
    out += '"';
    out += *str;
    out += '"';
  } else if (const auto* nums = std::get_if<std::vector<double>>(&value)) {
    out += '[';
    for (size_t i = 0; i < nums->size(); ++i) {
      if (i) out += ", ";
      format_number(out, (*nums)[i]);
    }
    out += ']';
  } else {
    const auto& strs = std::get<std::vector<std::string>>(value);
    out += '[';
    for (size_t i = 0; i < strs.size(); ++i) {
      if (i) out += ", ";
      out += '"';
      out += strs[i];
      out += '"';
    }
    out += ']';
  }
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str(), path.string());
}

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& origin) {
  ConfigFile config;
  Table* current = nullptr;
  int line_no = 0;
  std::istringstream stream(text);
  std::string raw;
  while (std::getline(stream, raw)) {
    ++line_no;
    const auto line = strip(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, line_no, "unterminated table header");
      const auto name = strip(line.substr(1, line.size() - 2));
      if (name.empty()) fail(origin, line_no, "empty table name");
      for (char c : name) {
        if (!is_word_char(c)) fail(origin, line_no, "invalid table name");
      }
      current = &config.table_for(std::string(name));
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(origin, line_no, "expected 'key = value' or '[table]'");
    }
    const auto key = strip(line.substr(0, eq));
    const auto value_token = strip(line.substr(eq + 1));
    if (key.empty()) fail(origin, line_no, "empty key");
    for (char c : key) {
      if (!is_word_char(c)) fail(origin, line_no, "invalid key '" + std::string(key) + "'");
    }
    if (value_token.empty()) fail(origin, line_no, "missing value");
    if (current == nullptr) fail(origin, line_no, "key outside any [table]");
    current->entries.push_back(
        {std::string(key), parse_value(value_token, origin, line_no)});
  }
  return config;
}

std::string ConfigFile::serialize() const {
  std::string out;
  bool first = true;
  for (const auto& table : tables_) {
    if (!first) out += '\n';
    first = false;
    out += '[';
    out += table.name;
    out += "]\n";
    for (const auto& entry : table.entries) {
      out += entry.key;
      out += " = ";
      format_value(out, entry.value);
      out += '\n';
    }
  }
  return out;
}

void ConfigFile::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << serialize();
  if (!out) throw IoError("failed writing " + path.string());
}

bool ConfigFile::has_table(const std::string& table) const {
  for (const auto& t : tables_) {
    if (t.name == table) return true;
  }
  return false;
}

bool ConfigFile::has_key(const std::string& table, const std::string& key) const {
  return find(table, key) != nullptr;
}

const ConfigValue* ConfigFile::find(const std::string& table, const std::string& key) const {
  for (const auto& t : tables_) {
    if (t.name != table) continue;
    for (const auto& e : t.entries) {
      if (e.key == key) return &e.value;
    }
  }
  return nullptr;
}

const ConfigValue& ConfigFile::require(const std::string& table,
                                       const std::string& key) const {
  const ConfigValue* value = find(table, key);
  if (!value) throw ValidationError("missing key '" + key + "' in [" + table + "]");
  return *value;
}

double ConfigFile::require_number(const std::string& table, const std::string& key) const {
  const auto& value = require(table, key);
  if (const auto* num = std::get_if<double>(&value)) return *num;
  throw ValidationError("key '" + key + "' in [" + table + "] must be a number");
}

std::string ConfigFile::require_string(const std::string& table,
                                       const std::string& key) const {
  const auto& value = require(table, key);
  if (const auto* str = std::get_if<std::string>(&value)) return *str;
  throw ValidationError("key '" + key + "' in [" + table + "] must be a string");
}

std::vector<double> ConfigFile::require_numbers(const std::string& table,
                                                const std::string& key) const {
  const auto& value = require(table, key);
  if (const auto* nums = std::get_if<std::vector<double>>(&value)) return *nums;
  throw ValidationError("key '" + key + "' in [" + table + "] must be a number array");
}

std::optional<double> ConfigFile::optional_number(const std::string& table,
                                                  const std::string& key) const {
  if (!has_key(table, key)) return std::nullopt;
  return require_number(table, key);
}

std::optional<std::string> ConfigFile::optional_string(const std::string& table,
                                                       const std::string& key) const {
  if (!has_key(table, key)) return std::nullopt;
  return require_string(table, key);
}

std::optional<std::vector<std::string>> ConfigFile::optional_strings(
    const std::string& table, const std::string& key) const {
  if (!has_key(table, key)) return std::nullopt;
  const auto& value = require(table, key);
  if (const auto* strs = std::get_if<std::vector<std::string>>(&value)) return *strs;
  if (const auto* nums = std::get_if<std::vector<double>>(&value); nums && nums->empty()) {
    return std::vector<std::string>{};  // "[]" parses as an empty number array
  }
  throw ValidationError("key '" + key + "' in [" + table + "] must be a string array");
}

void ConfigFile::set(const std::string& table, const std::string& key, ConfigValue value) {
  Table& t = table_for(table);
  for (auto& e : t.entries) {
    if (e.key == key) {
      e.value = std::move(value);
      return;
    }
  }
  t.entries.push_back({key, std::move(value)});
}

ConfigFile::Table& ConfigFile::table_for(const std::string& name) {
  for (auto& t : tables_) {
    if (t.name == name) return t;
  }
  tables_.push_back({name, {}});
  return tables_.back();
}

}  // namespace dhopf
