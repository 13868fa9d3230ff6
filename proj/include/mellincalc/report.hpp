#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace mellincalc {

// Structured record of a named check.  Statistics keep insertion order so
// serialized reports are byte-stable run to run.
struct VerificationReport {
    std::string check_name;
    std::string inputs;
    std::vector<std::pair<std::string, double>> statistics;
    double tolerance = 0.0;
    bool pass = false;
    std::string grid_meta;
    std::uint64_t seed = 0;

    void stat(const std::string& key, double v) { statistics.emplace_back(key, v); }
    double get(const std::string& key) const;
    nlohmann::ordered_json to_json() const;
};

// full round-trip decimal formatting, C locale, for byte-stable CSV output
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace mellincalc
