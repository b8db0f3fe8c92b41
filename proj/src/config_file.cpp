#include "screwtool/config_file.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace screwtool {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

ConfigFile ConfigFile::parse_string(const std::string& text) {
    ConfigFile cfg;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    std::string section;
    int section_index = -1;
    std::vector<std::pair<std::string, int>> section_counts;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("unterminated section header", line_no);
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError("empty section name", line_no);
            int count = 0;
            for (auto& [name, n] : section_counts)
                if (name == section) count = ++n;
            if (count == 0) {
                section_counts.emplace_back(section, 1);
                count = 1;
            }
            section_index = count - 1;
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected `key = value`", line_no);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key before `=`", line_no);
        if (value.empty()) throw ConfigError("missing value for key `" + key + "`", line_no);
        cfg.entries.push_back({section, section.empty() ? -1 : section_index, key, value, line_no});
    }
    return cfg;
}

ConfigFile ConfigFile::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string(), 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

std::vector<const ConfigEntry*> ConfigFile::section_entries(const std::string& section,
                                                            int section_index) const {
    std::vector<const ConfigEntry*> out;
    for (const auto& e : entries)
        if (e.section == section && e.section_index == section_index) out.push_back(&e);
    return out;
}

int ConfigFile::section_count(const std::string& section) const {
    int max_index = -1;
    for (const auto& e : entries)
        if (e.section == section) max_index = std::max(max_index, e.section_index);
    return max_index + 1;
}

double parse_number(const ConfigEntry& entry) {
    const std::string& s = entry.value;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError("invalid number `" + s + "` for key `" + entry.key + "`",
                          entry.line);
    return v;
}

}  // namespace screwtool
