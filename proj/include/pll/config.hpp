#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pll/types.hpp"

namespace pll {

/// Default loop constants used when a config omits them.
namespace defaults {
inline constexpr double k_pd = 1.0;                 // V/rad
inline constexpr double k_vco = kTwoPi * 250e6;     // rad/s/V (250 MHz/V)
inline constexpr double r_ohm = 50.0;
inline constexpr double l_h = 1e-6;
inline constexpr double c_f = 1e-12;
} // namespace defaults

RlcFilter default_filter();

struct ResolvedConfig {
    LoopParams params;
    RlcFilter filter;
    SimConfig sim;
    std::vector<JitterSpec> jitters;

    friend bool operator==(const ResolvedConfig&, const ResolvedConfig&) = default;
};

struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;  // 1-based; 0 for entries added programmatically
};

/// Splits `key=value` lines. Blank lines and `#` comments are skipped,
/// surrounding whitespace is trimmed. Duplicate keys are an error.
std::vector<ConfigEntry> parse_config_entries(std::string_view text);

/// Validates entries and fills in defaults. Throws ConfigError naming the
/// offending key and line.
ResolvedConfig resolve_config(const std::vector<ConfigEntry>& entries);

ResolvedConfig parse_config(std::string_view text);

/// Replace `key` (or append it) in an entry list.
void set_entry(std::vector<ConfigEntry>& entries, const std::string& key, std::string value);

/// Every key with its resolved value, parseable by parse_config().
std::string format_config(const ResolvedConfig& cfg);

const char* to_string(SimMode m);
const char* to_string(Injection i);
const char* to_string(JitterKind k);

} // namespace pll
