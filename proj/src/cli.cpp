#include "pll/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <complex>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pll/blocks.hpp"
#include "pll/config.hpp"
#include "pll/engine.hpp"
#include "pll/errors.hpp"
#include "pll/linear_analysis.hpp"
#include "pll/sweep.hpp"
#include "pll/trace_io.hpp"

namespace pll {
namespace {

namespace fs = std::filesystem;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot open '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError(fmt::format("error reading '{}'", path));
    return ss.str();
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError(fmt::format("cannot write '{}'", path.string()));
    return os;
}

void finish(std::ofstream& os, const fs::path& path) {
    os.flush();
    if (!os) throw IoError(fmt::format("error writing '{}'", path.string()));
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(fmt::format("cannot create directory '{}': {}", dir.string(), ec.message()));
}

std::string complex_str(std::complex<double> z) {
    return fmt::format("{:.6g} {} j{:.6g}", z.real(), z.imag() < 0.0 ? '-' : '+', std::abs(z.imag()));
}

void write_bode(const fs::path& path, const BodeTable& b) {
    auto os = open_out(path);
    fmt::print(os, "f_hz,mag_db,phase_deg\n");
    for (std::size_t i = 0; i < b.size(); ++i) {
        fmt::print(os, "{:.17g},{:.17g},{:.17g}\n", b.freqs[i], b.mag_db[i], b.phase_deg[i]);
    }
    finish(os, path);
}

int cmd_simulate(const std::string& cfg_path, const std::string& out_dir, const std::string& vcd,
                 std::ostream& out) {
    const auto cfg = parse_config(read_file(cfg_path));
    const auto trace = simulate(cfg.params, cfg.filter, cfg.sim, cfg.jitters);
    const auto report = format_report(cfg, compute_metrics(trace, cfg.params));

    const fs::path dir(out_dir);
    ensure_dir(dir);
    {
        auto os = open_out(dir / "trace.csv");
        write_trace_csv(os, trace);
        finish(os, dir / "trace.csv");
    }
    {
        auto os = open_out(dir / "report.txt");
        os << report;
        finish(os, dir / "report.txt");
    }
    if (!vcd.empty()) {
        if (cfg.sim.mode() != SimMode::FullWave) {
            throw ConfigError("--vcd needs mode=full_wave", "mode");
        }
        auto os = open_out(vcd);
        write_vcd(os, trace);
        finish(os, vcd);
    }
    out << report;
    return kExitOk;
}

std::string poles_text(const ResolvedConfig& cfg) {
    const auto pp = filter_poles(cfg.filter);
    return fmt::format("s1 = {} rad/s\ns2 = {} rad/s\n", complex_str(pp.s1), complex_str(pp.s2));
}

int cmd_analyze(const std::string& cfg_path, const std::string& out_dir, double f_lo, double f_hi,
                int points, std::ostream& out) {
    const auto cfg = parse_config(read_file(cfg_path));
    const auto g = filter_tf(cfg.filter);
    const auto l = open_loop_tf(cfg.params, cfg.filter);
    const auto h_in = input_jitter_tf(cfg.params, cfg.filter);
    const auto h_vco = vco_jitter_tf(cfg.params, cfg.filter);

    const fs::path dir(out_dir);
    ensure_dir(dir);
    write_bode(dir / "bode_filter.csv", bode(g, f_lo, f_hi, points));
    write_bode(dir / "bode_open_loop.csv", bode(l, f_lo, f_hi, points));
    const auto b_in = bode(h_in, f_lo, f_hi, points);
    write_bode(dir / "bode_input_jitter.csv", b_in);
    write_bode(dir / "bode_vco_jitter.csv", bode(h_vco, f_lo, f_hi, points));

    std::string s = "# filter poles\n" + poles_text(cfg);
    s += fmt::format("filter_stability={}\n", to_string(stability(g)));
    s += "# closed-loop poles\n";
    for (const auto& p : h_in.poles()) s += fmt::format("p = {} rad/s\n", complex_str(p));
    s += fmt::format("closed_loop_stability={}\n", to_string(stability(h_in)));
    s += fmt::format("crossover_hz={:.9g}\n", crossover_frequency(cfg.params, cfg.filter));
    s += fmt::format("h_in_dc_gain_db={:.9g}\n", 20.0 * std::log10(cfg.params.n_div()));
    s += fmt::format("h_in_low_freq_mag_db={:.9g}\n", b_in.mag_db.front());
    const auto peak = peak_magnitude(h_in, f_lo, f_hi, std::max(points, 2001));
    s += fmt::format("h_in_peak_db={:.9g}\nh_in_peak_hz={:.9g}\n", peak.mag_db, peak.f_hz);
    {
        auto os = open_out(dir / "analysis.txt");
        os << s;
        finish(os, dir / "analysis.txt");
    }
    out << s;
    return kExitOk;
}

int cmd_poles(const std::string& cfg_path, std::ostream& out) {
    out << poles_text(parse_config(read_file(cfg_path)));
    return kExitOk;
}

int cmd_sweep(const std::string& cfg_path, const std::vector<std::string>& params, int jobs,
              const std::string& out_file, std::ostream& out) {
    const auto entries = parse_config_entries(read_file(cfg_path));
    resolve_config(entries);
    std::vector<SweepAxis> axes;
    for (const auto& p : params) axes.push_back(parse_sweep_axis(p));
    const auto rows = run_sweep(entries, axes, jobs);
    const auto table = format_sweep_table(axes, rows);
    if (out_file.empty()) {
        out << table;
    } else {
        auto os = open_out(out_file);
        os << table;
        finish(os, out_file);
    }
    for (const auto& r : rows) {
        if (r.diverged) throw SimulationDiverged("one or more sweep points diverged");
    }
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Behavioral simulator and linear analyzer for a divide-by-N PLL"};
    app.name("pllsim");
    app.require_subcommand(1);

    std::string cfg_path;
    std::string out_dir = ".";
    std::string vcd;
    auto* sim = app.add_subcommand("simulate", "Run the loop, write trace.csv and report.txt");
    sim->add_option("config", cfg_path, "Config file")->required();
    sim->add_option("-o,--out", out_dir, "Output directory");
    sim->add_option("--vcd", vcd, "Also write a VCD of the full-wave clocks");

    double f_lo = 1e2;
    double f_hi = 1e10;
    int points = 161;
    auto* ana = app.add_subcommand("analyze", "Bode tables, poles and stability verdicts");
    ana->add_option("config", cfg_path, "Config file")->required();
    ana->add_option("-o,--out", out_dir, "Output directory");
    ana->add_option("--f-lo", f_lo, "Lowest Bode frequency, Hz");
    ana->add_option("--f-hi", f_hi, "Highest Bode frequency, Hz");
    ana->add_option("--points", points, "Bode grid points");

    auto* pol = app.add_subcommand("poles", "Print the loop-filter poles");
    pol->add_option("config", cfg_path, "Config file")->required();

    std::vector<std::string> sweep_params;
    int jobs = 1;
    std::string sweep_out;
    auto* swp = app.add_subcommand("sweep", "Lock time / phase error over a parameter grid");
    swp->add_option("config", cfg_path, "Config file")->required();
    swp->add_option("-p,--param", sweep_params, "key=start:stop:count, key=log:a:b:n or key=v1,v2")
        ->required()
        ->expected(1, 2);
    swp->add_option("-j,--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    swp->add_option("-o,--out", sweep_out, "Write the table here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        fmt::print(err, "pllsim: error: {}\n", e.what());
        return kExitConfig;
    }

    try {
        if (sim->parsed()) return cmd_simulate(cfg_path, out_dir, vcd, out);
        if (ana->parsed()) return cmd_analyze(cfg_path, out_dir, f_lo, f_hi, points, out);
        if (pol->parsed()) return cmd_poles(cfg_path, out);
        return cmd_sweep(cfg_path, sweep_params, jobs, sweep_out, out);
    } catch (const IoError& e) {
        fmt::print(err, "pllsim: I/O error: {}\n", e.what());
        return kExitIo;
    } catch (const SimulationDiverged& e) {
        fmt::print(err, "pllsim: simulation diverged: {}\n", e.what());
        return kExitDiverged;
    } catch (const ConfigError& e) {
        fmt::print(err, "pllsim: config error: {}\n", e.what());
        return kExitConfig;
    } catch (const InvalidInput& e) {
        fmt::print(err, "pllsim: config error: {}\n", e.what());
        return kExitConfig;
    }
}

} // namespace pll
