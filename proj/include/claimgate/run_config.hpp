#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace claimgate {

inline constexpr const char* kToolName = "claimgate";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 42;

// Settings that determine an output artifact. Embedded verbatim in every file
// a command writes. Execution-only settings (worker count) are deliberately
// absent because they never change results.
struct RunConfig {
    std::string command;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t k = 200'000;
    std::string congruence = "median";
    std::string sd_source = "imputed-point";
    std::string output_format = "text";
    std::string output_path;
    // Command-specific settings, in insertion order.
    std::vector<std::pair<std::string, std::string>> parameters;

    RunConfig& set(std::string key, std::string value);

    nlohmann::ordered_json to_json() const;
    // "# key: value" lines for CSV headers.
    std::vector<std::string> comment_lines() const;
};

}  // namespace claimgate
