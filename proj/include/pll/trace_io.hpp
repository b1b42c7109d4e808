#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "pll/config.hpp"
#include "pll/types.hpp"

namespace pll {

inline constexpr std::string_view kTraceCsvHeader = "t_s,v_pd_v,v_cont_v,phase_out_rad,freq_out_hz";
inline constexpr std::string_view kMetricsMarker = "# metrics";

/// Trace rows as decimal text with 17 significant digits.
void write_trace_csv(std::ostream& os, const SimTrace& trace);

struct Metrics {
    std::optional<double> lock_time_s;
    std::optional<double> final_phase_err_rad;
    std::optional<double> mean_v_cont_v;
    double freq_err_rel_final;
};

Metrics compute_metrics(const SimTrace& trace, const LoopParams& params);

/// Resolved-config echo, then the metrics block (key=value, "none" when absent).
std::string format_report(const ResolvedConfig& cfg, const Metrics& m);

/// The config echo at the top of a report, ready for parse_config().
std::string report_config_section(std::string_view report);

/// Value-change dump of the FullWave carriers rendered as square clocks
/// (sin >= 0 -> 1) plus v_cont as a real signal. Timescale 1 fs.
void write_vcd(std::ostream& os, const SimTrace& trace);

} // namespace pll
