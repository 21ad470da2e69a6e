#include "claimgate/run_config.hpp"

namespace claimgate {

RunConfig& RunConfig::set(std::string key, std::string value) {
    for (auto& [k_, v] : parameters) {
        if (k_ == key) {
            v = std::move(value);
            return *this;
        }
    }
    parameters.emplace_back(std::move(key), std::move(value));
    return *this;
}

nlohmann::ordered_json RunConfig::to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["seed"] = seed;
    j["k"] = k;
    j["congruence"] = congruence;
    j["sd_source"] = sd_source;
    j["output_format"] = output_format;
    j["output_path"] = output_path;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [key, value] : parameters) params[key] = value;
    j["parameters"] = std::move(params);
    return j;
}

std::vector<std::string> RunConfig::comment_lines() const {
    std::vector<std::string> lines;
    lines.push_back(std::string("# tool: ") + kToolName + " " + kToolVersion);
    lines.push_back("# command: " + command);
    lines.push_back("# seed: " + std::to_string(seed));
    lines.push_back("# k: " + std::to_string(k));
    lines.push_back("# congruence: " + congruence);
    lines.push_back("# sd_source: " + sd_source);
    lines.push_back("# output_format: " + output_format);
    lines.push_back("# output_path: " + output_path);
    for (const auto& [key, value] : parameters) lines.push_back("# " + key + ": " + value);
    return lines;
}

}  // namespace claimgate
