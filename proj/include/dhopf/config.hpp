#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dhopf/errors.hpp"

namespace dhopf {

/// Value of one configuration key: number, boolean, quoted string, or a
/// homogeneous array of numbers or strings.
using ConfigValue =
    std::variant<double, bool, std::string, std::vector<double>, std::vector<std::string>>;

/// Plain-text key-value configuration with named tables. The same format is
/// used for scenario inputs and for emitted reports, so everything the tool
/// writes can be read back by the tool.
///
/// Grammar (one construct per line):
///   # comment                      -- also allowed after a value
///   [table]
///   key = 1.25
///   key = true
///   key = "text"
///   key = [1, 2, 3]
///   key = ["a", "b"]
///
/// Tables and keys match [A-Za-z0-9_.-]+. Key order inside a table and table
/// order in the file are preserved, and serialize() reproduces them, so a
/// parse/serialize round trip is byte-stable.
class ConfigFile {
 public:
  struct Entry {
    std::string key;
    ConfigValue value;
  };
  struct Table {
    std::string name;
    std::vector<Entry> entries;
  };

  static ConfigFile parse_file(const std::filesystem::path& path);
  static ConfigFile parse_string(const std::string& text, const std::string& origin);

  std::string serialize() const;
  void save(const std::filesystem::path& path) const;

  bool has_table(const std::string& table) const;
  bool has_key(const std::string& table, const std::string& key) const;

  const ConfigValue* find(const std::string& table, const std::string& key) const;
  const ConfigValue& require(const std::string& table, const std::string& key) const;

  double require_number(const std::string& table, const std::string& key) const;
  std::string require_string(const std::string& table, const std::string& key) const;
  std::vector<double> require_numbers(const std::string& table,
                                      const std::string& key) const;
  std::optional<double> optional_number(const std::string& table,
                                        const std::string& key) const;
  std::optional<std::string> optional_string(const std::string& table,
                                             const std::string& key) const;
  std::optional<std::vector<std::string>> optional_strings(const std::string& table,
                                                           const std::string& key) const;

  /// Sets (or overwrites) a key, creating the table on first use.
  void set(const std::string& table, const std::string& key, ConfigValue value);

  const std::vector<Table>& tables() const { return tables_; }

 private:
  Table& table_for(const std::string& name);

  std::vector<Table> tables_;
};

}  // namespace dhopf
