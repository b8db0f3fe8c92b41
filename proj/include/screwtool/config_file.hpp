#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace screwtool {

/// Error raised while reading a config file; carries the 1-based line number.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string message, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// One `key = value` pair. `section` is empty for top-level entries, or the
/// bracketed section name (e.g. "spring") the entry belongs to. Repeated
/// sections are distinguished by `section_index`.
struct ConfigEntry {
    std::string section;
    int section_index = -1;  // -1 for top-level entries
    std::string key;
    std::string value;
    int line = 0;
};

/// Line-oriented `key = value` grammar with `#` comments and optional
/// repeated `[section]` blocks.
struct ConfigFile {
    std::vector<ConfigEntry> entries;

    static ConfigFile parse_string(const std::string& text);
    static ConfigFile parse_file(const std::filesystem::path& path);

    /// Entries in a given section instance (top level: section = "", index = -1).
    std::vector<const ConfigEntry*> section_entries(const std::string& section,
                                                    int section_index) const;
    int section_count(const std::string& section) const;
};

double parse_number(const ConfigEntry& entry);

}  // namespace screwtool
