#include "pll/sweep.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <exception>

#include "pll/engine.hpp"
#include "pll/errors.hpp"

namespace pll {
namespace {

double parse_number(std::string_view s, const std::string& spec) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
        throw ConfigError(fmt::format("sweep axis '{}': cannot parse '{}'", spec, s));
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

struct Grid {
    std::vector<std::vector<double>> coords;
    std::vector<ResolvedConfig> configs;
};

Grid build_grid(const std::vector<ConfigEntry>& base, std::span<const SweepAxis> axes) {
    if (axes.empty() || axes.size() > 2) {
        throw ConfigError("sweep needs one or two axes");
    }
    Grid g;
    const std::size_t n0 = axes[0].values.size();
    const std::size_t n1 = axes.size() == 2 ? axes[1].values.size() : 1;
    for (std::size_t i = 0; i < n0; ++i) {
        for (std::size_t j = 0; j < n1; ++j) {
            auto entries = base;
            std::vector<double> c{axes[0].values[i]};
            set_entry(entries, axes[0].key, fmt::format("{:.17g}", c[0]));
            if (axes.size() == 2) {
                c.push_back(axes[1].values[j]);
                set_entry(entries, axes[1].key, fmt::format("{:.17g}", c[1]));
            }
            g.configs.push_back(resolve_config(entries));
            g.coords.push_back(std::move(c));
        }
    }
    return g;
}

SweepPoint run_point(const ResolvedConfig& cfg, std::vector<double> coords) {
    SweepPoint p{std::move(coords), std::nullopt, std::nullopt, std::nullopt, false};
    try {
        const auto tr = simulate(cfg.params, cfg.filter, cfg.sim, cfg.jitters);
        p.lock_time = tr.lock_time;
        p.final_phase_err = tr.final_phase_err;
        p.mean_v_cont = tr.mean_v_cont;
    } catch (const SimulationDiverged&) {
        p.diverged = true;
    }
    return p;
}

} // namespace

SweepAxis parse_sweep_axis(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError(fmt::format("sweep axis '{}': expected key=values", spec));
    }
    SweepAxis axis{spec.substr(0, eq), {}};
    const std::string_view rhs = std::string_view(spec).substr(eq + 1);
    if (rhs.find(':') != std::string_view::npos) {
        auto parts = split(rhs, ':');
        const bool log = parts.size() == 4 && parts[0] == "log";
        if (log) parts.erase(parts.begin());
        if (parts.size() != 3) {
            throw ConfigError(fmt::format("sweep axis '{}': expected [log:]start:stop:count", spec));
        }
        const double a = parse_number(parts[0], spec);
        const double b = parse_number(parts[1], spec);
        const double n = parse_number(parts[2], spec);
        if (n < 1 || n != std::floor(n) || n > 1e6 || (log && !(a > 0.0 && b > 0.0))) {
            throw ConfigError(fmt::format("sweep axis '{}': bad range", spec));
        }
        const auto count = static_cast<int>(n);
        for (int i = 0; i < count; ++i) {
            const double frac = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            axis.values.push_back(log ? a * std::pow(b / a, frac) : a + (b - a) * frac);
        }
    } else {
        for (auto part : split(rhs, ',')) axis.values.push_back(parse_number(part, spec));
    }
    return axis;
}

std::vector<SweepPoint> run_sweep(const std::vector<ConfigEntry>& base,
                                  std::span<const SweepAxis> axes, int jobs) {
    const auto grid = build_grid(base, axes);
    const auto n = static_cast<std::int64_t>(grid.configs.size());
    std::vector<SweepPoint> rows(grid.configs.size());
    std::vector<std::exception_ptr> errors(grid.configs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs > 0 ? jobs : 1)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            rows[k] = run_point(grid.configs[k], grid.coords[k]);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return rows;
}

std::vector<SweepPoint> run_sweep_reference(const std::vector<ConfigEntry>& base,
                                            std::span<const SweepAxis> axes) {
    const auto grid = build_grid(base, axes);
    std::vector<SweepPoint> rows;
    for (std::size_t k = 0; k < grid.configs.size(); ++k) {
        rows.push_back(run_point(grid.configs[k], grid.coords[k]));
    }
    return rows;
}

std::string format_sweep_table(std::span<const SweepAxis> axes, std::span<const SweepPoint> rows) {
    const auto opt = [](const std::optional<double>& v) {
        return v ? fmt::format("{:.17g}", *v) : std::string("none");
    };
    std::string out;
    for (const auto& a : axes) out += a.key + ",";
    out += "lock_time_s,final_phase_err_rad,mean_v_cont_v,status\n";
    for (const auto& r : rows) {
        for (double c : r.coords) out += fmt::format("{:.17g},", c);
        out += fmt::format("{},{},{},{}\n", opt(r.lock_time), opt(r.final_phase_err),
                           opt(r.mean_v_cont), r.diverged ? "diverged" : "ok");
    }
    return out;
}

} // namespace pll
