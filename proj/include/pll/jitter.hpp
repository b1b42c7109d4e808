#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pll/types.hpp"

namespace pll {

/// SplitMix64 (Steele, Lea & Flood 2014).
///
///   state += 0x9E3779B97F4A7C15
///   z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// Output i of a generator seeded with `seed` depends only on (seed, i), so
/// the stream can be indexed directly; splitmix64_at() does that.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index);

/// Uniform on (0, 1]: ((x >> 11) + 1) * 2^-53.
double unit_interval(std::uint64_t x);

/// i-th standard normal of the seed's stream. Pair j = i / 2 draws
/// u1 = U(2j), u2 = U(2j + 1) and yields r cos(2 pi u2) for even i,
/// r sin(2 pi u2) for odd i, with r = sqrt(-2 ln u1) (Box-Muller).
double standard_normal_at(std::uint64_t seed, std::uint64_t index);

/// Sample-by-sample generator used by the loop engine. Produces exactly the
/// values gen_jitter() returns for a uniform grid starting at t0 with step dt.
class JitterSource {
public:
    JitterSource(const JitterSpec& spec, double t0, double dt);

    /// Value at grid index k. Indices must be requested in increasing order
    /// for RandomWalk; the other kinds are random-access.
    double at(std::uint64_t k);

private:
    JitterSpec spec_;
    double t0_;
    double dt_;
    std::uint64_t walk_next_ = 0;
    double walk_sum_ = 0.0;
};

/// Jitter sequence (rad) on a uniform time grid. White-phase samples are
/// generated in an OpenMP loop; RandomWalk is a serial prefix sum of them.
std::vector<double> gen_jitter(const JitterSpec& spec, std::span<const double> t_grid);

/// Serial reference for gen_jitter(); bitwise identical output.
std::vector<double> gen_jitter_reference(const JitterSpec& spec, std::span<const double> t_grid);

} // namespace pll
