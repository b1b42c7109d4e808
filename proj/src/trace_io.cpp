#include "pll/trace_io.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <ostream>

#include "pll/errors.hpp"

namespace pll {

void write_trace_csv(std::ostream& os, const SimTrace& trace) {
    fmt::memory_buffer buf;
    fmt::format_to(std::back_inserter(buf), "{}\n", kTraceCsvHeader);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        fmt::format_to(std::back_inserter(buf), "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                       trace.t[i], trace.v_pd[i], trace.v_cont[i], trace.phase_out[i],
                       trace.freq_out[i]);
        if (buf.size() > (1u << 20)) {
            os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

Metrics compute_metrics(const SimTrace& trace, const LoopParams& params) {
    if (trace.size() == 0) {
        throw InvalidInput("compute_metrics: empty trace");
    }
    const double target = params.f_target();
    return {trace.lock_time, trace.final_phase_err, trace.mean_v_cont,
            (trace.freq_out.back() - target) / target};
}

namespace {

std::string opt(const std::optional<double>& v) {
    return v ? fmt::format("{:.17g}", *v) : std::string("none");
}

} // namespace

std::string format_report(const ResolvedConfig& cfg, const Metrics& m) {
    std::string out = "# pllsim report\n# resolved config\n";
    out += format_config(cfg);
    out += fmt::format("# lock_target_hz={:.17g}\n", cfg.params.f_target());
    out += kMetricsMarker;
    out += '\n';
    out += fmt::format("lock_time_s={}\n", opt(m.lock_time_s));
    out += fmt::format("final_phase_err_rad={}\n", opt(m.final_phase_err_rad));
    out += fmt::format("mean_v_cont_v={}\n", opt(m.mean_v_cont_v));
    out += fmt::format("freq_err_rel_final={:.17g}\n", m.freq_err_rel_final);
    return out;
}

std::string report_config_section(std::string_view report) {
    const auto pos = report.find(kMetricsMarker);
    return std::string(report.substr(0, pos));
}

void write_vcd(std::ostream& os, const SimTrace& trace) {
    if (trace.out_wave.size() != trace.size()) {
        throw InvalidInput("write_vcd: trace has no full-wave carriers (run in full_wave mode)");
    }
    os << "$date pllsim $end\n$timescale 1fs $end\n$scope module pll $end\n"
       << "$var wire 1 ! ref_clk $end\n"
       << "$var wire 1 \" fb_clk $end\n"
       << "$var wire 1 # out_clk $end\n"
       << "$var real 64 $ v_cont $end\n"
       << "$upscope $end\n$enddefinitions $end\n";
    int prev[3] = {-1, -1, -1};
    double prev_v = std::nan("");
    const char ids[3] = {'!', '"', '#'};
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const int bits[3] = {trace.ref_wave[i] >= 0.0, trace.fb_wave[i] >= 0.0,
                             trace.out_wave[i] >= 0.0};
        const double v = trace.v_cont[i];
        const bool changed = bits[0] != prev[0] || bits[1] != prev[1] || bits[2] != prev[2] ||
                             !(v == prev_v);
        if (!changed) continue;
        fmt::print(os, "#{}\n", std::llround(trace.t[i] * 1e15));
        for (int k = 0; k < 3; ++k) {
            if (bits[k] != prev[k]) {
                fmt::print(os, "{}{}\n", bits[k], ids[k]);
                prev[k] = bits[k];
            }
        }
        if (!(v == prev_v)) {
            fmt::print(os, "r{:.17g} $\n", v);
            prev_v = v;
        }
    }
}

} // namespace pll
