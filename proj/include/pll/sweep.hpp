#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pll/config.hpp"

namespace pll {

struct SweepAxis {
    std::string key;             // any numeric config key
    std::vector<double> values;
};

/// "key=start:stop:count" (linear), "key=log:start:stop:count" or "key=v1,v2,...".
SweepAxis parse_sweep_axis(const std::string& spec);

struct SweepPoint {
    std::vector<double> coords;  // one value per axis, in axis order
    std::optional<double> lock_time;
    std::optional<double> final_phase_err;
    std::optional<double> mean_v_cont;
    bool diverged = false;
};

/// Resolves every grid point first (config errors surface before any run),
/// then simulates the points on `jobs` OpenMP threads. Rows come back in grid
/// order with the last axis varying fastest.
std::vector<SweepPoint> run_sweep(const std::vector<ConfigEntry>& base,
                                  std::span<const SweepAxis> axes, int jobs);

/// Serial reference for run_sweep().
std::vector<SweepPoint> run_sweep_reference(const std::vector<ConfigEntry>& base,
                                            std::span<const SweepAxis> axes);

std::string format_sweep_table(std::span<const SweepAxis> axes, std::span<const SweepPoint> rows);

} // namespace pll
