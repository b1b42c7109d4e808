#include "pll/jitter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pll/errors.hpp"

namespace pll {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void check_grid(std::span<const double> t) {
    for (double v : t) {
        if (!std::isfinite(v)) throw InvalidInput("gen_jitter: non-finite time");
    }
    if (t.size() < 2) return;
    const double step = t[1] - t[0];
    if (!(step > 0.0)) {
        throw InvalidInput("gen_jitter: time grid must be strictly increasing");
    }
    const double tol = 1e-6 * step + 4.0 * std::numeric_limits<double>::epsilon() *
                                         std::max(std::abs(t.front()), std::abs(t.back()));
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (std::abs((t[i] - t[i - 1]) - step) > tol) {
            throw InvalidInput("gen_jitter: time grid is not uniform");
        }
    }
}

} // namespace

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) {
    return mix(seed + (index + 1) * kGolden);
}

double unit_interval(std::uint64_t x) {
    return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

double standard_normal_at(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t pair = index / 2;
    const double u1 = unit_interval(splitmix64_at(seed, 2 * pair));
    const double u2 = unit_interval(splitmix64_at(seed, 2 * pair + 1));
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = kTwoPi * u2;
    return (index % 2 == 0) ? r * std::cos(theta) : r * std::sin(theta);
}

JitterSource::JitterSource(const JitterSpec& spec, double t0, double dt)
    : spec_(spec), t0_(t0), dt_(dt) {}

double JitterSource::at(std::uint64_t k) {
    switch (spec_.kind()) {
    case JitterKind::Sinusoidal: {
        const double t = t0_ + static_cast<double>(k) * dt_;
        return spec_.amplitude() * std::sin(kTwoPi * spec_.freq() * t);
    }
    case JitterKind::WhitePhase:
        return spec_.amplitude() * standard_normal_at(spec_.seed(), k);
    case JitterKind::RandomWalk:
        if (k + 1 < walk_next_) {
            throw InvalidInput("JitterSource: random walk indices must not go backwards");
        }
        while (walk_next_ <= k) {
            walk_sum_ += spec_.amplitude() * standard_normal_at(spec_.seed(), walk_next_);
            ++walk_next_;
        }
        return walk_sum_;
    }
    return 0.0;
}

std::vector<double> gen_jitter(const JitterSpec& spec, std::span<const double> t_grid) {
    check_grid(t_grid);
    const auto n = static_cast<std::int64_t>(t_grid.size());
    std::vector<double> out(t_grid.size());
    const double a = spec.amplitude();
    if (spec.kind() == JitterKind::Sinusoidal) {
        const double w = kTwoPi * spec.freq();
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const auto k = static_cast<std::size_t>(i);
            out[k] = a * std::sin(w * t_grid[k]);
        }
        return out;
    }
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            a * standard_normal_at(spec.seed(), static_cast<std::uint64_t>(i));
    }
    if (spec.kind() == JitterKind::RandomWalk) {
        double sum = 0.0;
        for (auto& v : out) {
            sum += v;
            v = sum;
        }
    }
    return out;
}

std::vector<double> gen_jitter_reference(const JitterSpec& spec, std::span<const double> t_grid) {
    check_grid(t_grid);
    std::vector<double> out;
    out.reserve(t_grid.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        switch (spec.kind()) {
        case JitterKind::Sinusoidal:
            out.push_back(spec.amplitude() * std::sin(kTwoPi * spec.freq() * t_grid[i]));
            break;
        case JitterKind::WhitePhase:
            out.push_back(spec.amplitude() * standard_normal_at(spec.seed(), i));
            break;
        case JitterKind::RandomWalk:
            sum += spec.amplitude() * standard_normal_at(spec.seed(), i);
            out.push_back(sum);
            break;
        }
    }
    return out;
}

} // namespace pll
