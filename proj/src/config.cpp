#include "pll/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>

#include "pll/errors.hpp"

namespace pll {

RlcFilter default_filter() { return RlcFilter(defaults::r_ohm, defaults::l_h, defaults::c_f); }

namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(const ConfigEntry& e, const std::string& what) {
    const std::string where = e.line > 0 ? fmt::format("line {}: ", e.line) : std::string{};
    throw ConfigError(fmt::format("{}{}: {}", where, e.key, what), e.key, e.line);
}

double to_double(const ConfigEntry& e) {
    double v = 0.0;
    const auto* first = e.value.data();
    const auto* last = first + e.value.size();
    if (!e.value.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || e.value.empty()) {
        fail(e, fmt::format("cannot parse '{}' as a number", e.value));
    }
    if (!std::isfinite(v)) {
        fail(e, "value must be finite");
    }
    return v;
}

long long to_integer(const ConfigEntry& e) {
    const double v = to_double(e);
    if (v != std::floor(v) || std::abs(v) > 9.0e15) {
        fail(e, fmt::format("'{}' is not an integer", e.value));
    }
    return static_cast<long long>(v);
}

std::uint64_t to_seed(const ConfigEntry& e) {
    std::uint64_t v = 0;
    std::string_view s = e.value;
    int base = 10;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
        s.remove_prefix(2);
        base = 16;
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        fail(e, fmt::format("cannot parse '{}' as an unsigned 64-bit seed", e.value));
    }
    return v;
}

const std::set<std::string, std::less<>> kScalarKeys = {
    "f_in_hz", "f_free_hz", "n_div", "k_pd_v_per_rad", "k_vco_rad_per_s_per_v",
    "r_ohm", "l_h", "c_f", "mode", "dt_s", "duration_s", "lock_freq_tol",
    "lock_window_s", "decimation",
};

const std::set<std::string, std::less<>> kJitterFields = {
    "injection", "kind", "amplitude_rad", "freq_hz", "seed",
};

struct JitterKey {
    long long index;
    std::string field;
};

std::optional<JitterKey> split_jitter_key(const ConfigEntry& e) {
    constexpr std::string_view prefix = "jitter.";
    if (e.key.rfind(prefix, 0) != 0) return std::nullopt;
    const auto rest = std::string_view(e.key).substr(prefix.size());
    const auto dot = rest.find('.');
    if (dot == std::string_view::npos || dot == 0) fail(e, "expected jitter.<n>.<field>");
    long long idx = -1;
    const auto num = rest.substr(0, dot);
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), idx);
    if (ec != std::errc{} || ptr != num.data() + num.size() || idx < 0) {
        fail(e, "jitter block index must be a non-negative integer");
    }
    std::string field(rest.substr(dot + 1));
    if (!kJitterFields.contains(field)) fail(e, "unknown jitter field");
    return JitterKey{idx, std::move(field)};
}

void require(bool ok, const ConfigEntry& e, const char* what) {
    if (!ok) fail(e, what);
}

} // namespace

std::vector<ConfigEntry> parse_config_entries(std::string_view text) {
    std::vector<ConfigEntry> out;
    std::set<std::string, std::less<>> seen;
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("line {}: expected key=value, got '{}'", line_no, line),
                              std::string(line), line_no);
        }
        ConfigEntry e{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))),
                      line_no};
        if (e.key.empty()) {
            throw ConfigError(fmt::format("line {}: empty key", line_no), "", line_no);
        }
        if (!seen.insert(e.key).second) fail(e, "duplicate key");
        out.push_back(std::move(e));
    }
    return out;
}

void set_entry(std::vector<ConfigEntry>& entries, const std::string& key, std::string value) {
    for (auto& e : entries) {
        if (e.key == key) {
            e.value = std::move(value);
            return;
        }
    }
    entries.push_back({key, std::move(value), 0});
}

ResolvedConfig resolve_config(const std::vector<ConfigEntry>& entries) {
    std::map<std::string, const ConfigEntry*, std::less<>> scalars;
    std::map<long long, std::map<std::string, const ConfigEntry*>> jitter_blocks;
    for (const auto& e : entries) {
        if (auto jk = split_jitter_key(e)) {
            jitter_blocks[jk->index][jk->field] = &e;
        } else if (kScalarKeys.contains(e.key)) {
            scalars[e.key] = &e;
        } else {
            fail(e, "unknown key");
        }
    }

    const auto get = [&](const char* key) -> const ConfigEntry* {
        const auto it = scalars.find(key);
        return it == scalars.end() ? nullptr : it->second;
    };
    const auto need = [&](const char* key) -> const ConfigEntry& {
        if (const auto* e = get(key)) return *e;
        throw ConfigError(fmt::format("missing required key {}", key), key, 0);
    };
    const auto positive = [&](const char* key, double fallback) {
        const auto* e = get(key);
        if (!e) return fallback;
        const double v = to_double(*e);
        require(v > 0.0, *e, "must be > 0");
        return v;
    };

    const auto& f_in_e = need("f_in_hz");
    const double f_in = to_double(f_in_e);
    require(f_in > 0.0, f_in_e, "must be > 0");
    const auto& n_div_e = need("n_div");
    const long long n_div = to_integer(n_div_e);
    require(n_div >= 1, n_div_e, "must be >= 1");
    require(n_div <= std::numeric_limits<int>::max(), n_div_e, "too large");
    require(std::isfinite(kTwoPi * f_in * static_cast<double>(n_div)), n_div_e,
            "n_div * f_in overflows as an angular frequency");

    const double f_target = f_in * static_cast<double>(n_div);
    const double f_free = positive("f_free_hz", f_target);
    const double k_pd = positive("k_pd_v_per_rad", defaults::k_pd);
    const double k_vco = positive("k_vco_rad_per_s_per_v", defaults::k_vco);

    double r = defaults::r_ohm;
    if (const auto* e = get("r_ohm")) {
        r = to_double(*e);
        require(r >= 0.0, *e, "must be >= 0");
    }
    const double l = positive("l_h", defaults::l_h);
    const double c = positive("c_f", defaults::c_f);

    SimConfig::Fields sf;
    if (const auto* e = get("mode")) {
        if (e->value == "phase_domain") {
            sf.mode = SimMode::PhaseDomain;
        } else if (e->value == "full_wave") {
            sf.mode = SimMode::FullWave;
        } else {
            fail(*e, "expected phase_domain or full_wave");
        }
    }
    sf.dt = positive("dt_s", sf.dt);
    sf.duration = positive("duration_s", sf.duration);
    if (const auto* e = get("duration_s")) require(sf.duration > sf.dt, *e, "must exceed dt_s");
    if (const auto* e = get("lock_freq_tol")) {
        sf.lock_freq_tol = to_double(*e);
        require(sf.lock_freq_tol > 0.0 && sf.lock_freq_tol < 1.0, *e, "must lie in (0, 1)");
    }
    sf.lock_window = positive("lock_window_s", sf.lock_window);
    if (const auto* e = get("decimation")) {
        const long long d = to_integer(*e);
        require(d >= 1 && d <= std::numeric_limits<int>::max(), *e, "must be a positive integer");
        sf.decimation = static_cast<int>(d);
    }

    std::vector<JitterSpec> jitters;
    for (const auto& [idx, fields] : jitter_blocks) {
        const auto field = [&](const char* name) -> const ConfigEntry* {
            const auto it = fields.find(name);
            return it == fields.end() ? nullptr : it->second;
        };
        const auto need_field = [&](const char* name) -> const ConfigEntry& {
            if (const auto* e = field(name)) return *e;
            const auto key = fmt::format("jitter.{}.{}", idx, name);
            throw ConfigError(fmt::format("missing required key {}", key), key, 0);
        };
        const auto& inj_e = need_field("injection");
        Injection inj{};
        if (inj_e.value == "pd_input") {
            inj = Injection::PdInput;
        } else if (inj_e.value == "vco") {
            inj = Injection::Vco;
        } else {
            fail(inj_e, "expected pd_input or vco");
        }
        const auto& kind_e = need_field("kind");
        JitterKind kind{};
        if (kind_e.value == "sinusoidal") {
            kind = JitterKind::Sinusoidal;
        } else if (kind_e.value == "random_walk") {
            kind = JitterKind::RandomWalk;
        } else if (kind_e.value == "white_phase") {
            kind = JitterKind::WhitePhase;
        } else {
            fail(kind_e, "expected sinusoidal, random_walk or white_phase");
        }
        const auto& amp_e = need_field("amplitude_rad");
        const double amp = to_double(amp_e);
        require(amp >= 0.0, amp_e, "must be >= 0");
        double freq = 0.0;
        if (kind == JitterKind::Sinusoidal) {
            const auto& fe = need_field("freq_hz");
            freq = to_double(fe);
            require(freq > 0.0, fe, "must be > 0");
        } else if (const auto* fe = field("freq_hz")) {
            freq = to_double(*fe);
            require(freq >= 0.0, *fe, "must be >= 0");
        }
        std::uint64_t seed = 0;
        if (const auto* se = field("seed")) seed = to_seed(*se);
        for (const auto& j : jitters) {
            if (j.injection() == inj) fail(inj_e, "a jitter block already targets this injection point");
        }
        jitters.emplace_back(inj, kind, amp, freq, seed);
    }

    try {
        ResolvedConfig out{LoopParams(k_pd, k_vco, static_cast<int>(n_div), f_in, f_free),
                           RlcFilter(r, l, c), SimConfig(sf), std::move(jitters)};
        out.sim.check_against(out.params);
        return out;
    } catch (const InvalidInput& ex) {
        throw ConfigError(ex.what());
    }
}

ResolvedConfig parse_config(std::string_view text) { return resolve_config(parse_config_entries(text)); }

const char* to_string(SimMode m) { return m == SimMode::FullWave ? "full_wave" : "phase_domain"; }

const char* to_string(Injection i) { return i == Injection::Vco ? "vco" : "pd_input"; }

const char* to_string(JitterKind k) {
    switch (k) {
    case JitterKind::Sinusoidal: return "sinusoidal";
    case JitterKind::RandomWalk: return "random_walk";
    case JitterKind::WhitePhase: return "white_phase";
    }
    return "?";
}

std::string format_config(const ResolvedConfig& cfg) {
    const auto& p = cfg.params;
    const auto& f = cfg.filter;
    const auto& s = cfg.sim;
    std::string out;
    auto put = [&](std::string_view key, auto value) { out += fmt::format("{}={}\n", key, value); };
    auto num = [&](std::string_view key, double v) { out += fmt::format("{}={:.17g}\n", key, v); };
    num("f_in_hz", p.f_in());
    put("n_div", p.n_div());
    num("f_free_hz", p.f_free());
    num("k_pd_v_per_rad", p.k_pd());
    num("k_vco_rad_per_s_per_v", p.k_vco());
    num("r_ohm", f.r());
    num("l_h", f.l());
    num("c_f", f.c());
    put("mode", to_string(s.mode()));
    num("dt_s", s.dt());
    num("duration_s", s.duration());
    num("lock_freq_tol", s.lock_freq_tol());
    num("lock_window_s", s.lock_window());
    put("decimation", s.decimation());
    for (std::size_t i = 0; i < cfg.jitters.size(); ++i) {
        const auto& j = cfg.jitters[i];
        const auto key = [&](const char* field) { return fmt::format("jitter.{}.{}", i, field); };
        put(key("injection"), to_string(j.injection()));
        put(key("kind"), to_string(j.kind()));
        num(key("amplitude_rad"), j.amplitude());
        num(key("freq_hz"), j.freq());
        put(key("seed"), j.seed());
    }
    return out;
}

} // namespace pll
