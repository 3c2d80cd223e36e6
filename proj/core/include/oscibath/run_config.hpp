#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "oscibath/common.hpp"

namespace oscibath {

enum class OutputFormat { json, csv, human };

OutputFormat parse_format(const std::string& name);  // InvalidInput on unknown
const char* to_string(OutputFormat fmt);

/// Run-wide configuration. Loadable from a JSON file (the OSCIBATH_CONFIG
/// environment variable names one); parsing is strict, unknown keys are
/// rejected. Recognized keys: hbar, seed, format, tolerances (a map from
/// check name to a relative tolerance override).
struct RunConfig {
    double hbar = 1.0;
    std::uint64_t seed = 20260814ULL;
    OutputFormat format = OutputFormat::json;
    std::map<std::string, double> tolerances;

    double tolerance_or(const std::string& check, double fallback) const;

    static RunConfig from_json_text(const std::string& text);
    static RunConfig from_file(const std::string& path);
    /// Reads OSCIBATH_CONFIG; nullopt when the variable is unset or empty.
    static std::optional<RunConfig> from_environment();
};

}  // namespace oscibath
