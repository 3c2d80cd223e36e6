#include "oscibath/run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace oscibath {

OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    if (name == "human") return OutputFormat::human;
    throw InvalidInput("unknown output format '" + name + "' (expected json, csv or human)");
}

const char* to_string(OutputFormat fmt) {
    switch (fmt) {
        case OutputFormat::json: return "json";
        case OutputFormat::csv: return "csv";
        default: return "human";
    }
}

double RunConfig::tolerance_or(const std::string& check, double fallback) const {
    auto it = tolerances.find(check);
    return it != tolerances.end() ? it->second : fallback;
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw InvalidInput(std::string("config: invalid JSON: ") + err.what());
    }
    if (!doc.is_object()) throw InvalidInput("config: top level must be a JSON object");

    RunConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "hbar") {
            if (!value.is_number() || !(value.get<double>() > 0.0))
                throw InvalidInput("config: hbar must be a positive number");
            cfg.hbar = value.get<double>();
        } else if (key == "seed") {
            if (!value.is_number_unsigned())
                throw InvalidInput("config: seed must be a non-negative integer");
            cfg.seed = value.get<std::uint64_t>();
        } else if (key == "format") {
            if (!value.is_string()) throw InvalidInput("config: format must be a string");
            cfg.format = parse_format(value.get<std::string>());
        } else if (key == "tolerances") {
            if (!value.is_object())
                throw InvalidInput("config: tolerances must be an object");
            for (const auto& [check, tol] : value.items()) {
                if (!tol.is_number() || !(tol.get<double>() > 0.0))
                    throw InvalidInput("config: tolerance for '" + check +
                                       "' must be a positive number");
                cfg.tolerances[check] = tol.get<double>();
            }
        } else {
            throw InvalidInput("config: unknown key '" + key + "'");
        }
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("config: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json_text(buffer.str());
}

std::optional<RunConfig> RunConfig::from_environment() {
    const char* path = std::getenv("OSCIBATH_CONFIG");
    if (path == nullptr || *path == '\0') return std::nullopt;
    return from_file(path);
}

}  // namespace oscibath
