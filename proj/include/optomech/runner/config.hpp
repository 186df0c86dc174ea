// config.hpp: flat key = value scenario files.
//
//   # comment
//   mech.freq = 1e6        # trailing comments allowed
//
// Detunings are given in multiples of the mechanical frequency.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "optomech/core_model.hpp"
#include "optomech/dynamics.hpp"
#include "optomech/errors.hpp"

namespace optomech {

enum class DriveMode { both, left_only, right_only };

inline const char* to_string(DriveMode m) {
    switch (m) {
        case DriveMode::both: return "both";
        case DriveMode::left_only: return "left_only";
        case DriveMode::right_only: return "right_only";
    }
    return "?";
}

struct ConfigEntry {
    std::string value;
    std::size_t line = 0;  // 0 for values set programmatically
};

using ConfigValues = std::map<std::string, ConfigEntry, std::less<>>;

struct Scenario {
    std::string name;
    PhysicalParams params;  // drive powers already masked per drive_mode
    TrajectoryConfig trajectory;
    DriveMode drive_mode = DriveMode::both;
    double eps_on = 1e-4;
    double hold_periods = 10.0;
    ConfigValues source;
};

namespace config_keys {

inline const std::vector<std::string_view>& required() {
    static const std::vector<std::string_view> keys{
        "left.length_m",  "left.finesse",  "left.wavelength_m",  "left.power_W",  "left.detuning",
        "right.length_m", "right.finesse", "right.wavelength_m", "right.power_W", "right.detuning",
        "mech.mass_kg",   "mech.freq",     "mech.Q",             "mech.temperature_K",
        "sim.t_end_s",    "sim.dt_s",      "sim.sample_every",   "convention.frequency",
        "drive.mode",
    };
    return keys;
}

inline const std::vector<std::string_view>& optional() {
    static const std::vector<std::string_view> keys{"name", "analysis.eps_on", "analysis.hold_periods"};
    return keys;
}

inline bool known(std::string_view key) {
    auto has = [&](const std::vector<std::string_view>& v) { return std::find(v.begin(), v.end(), key) != v.end(); };
    return has(required()) || has(optional());
}

/// Keys whose values are plain numbers (eligible for sweeps).
inline bool numeric(std::string_view key) {
    return known(key) && key != "name" && key != "convention.frequency" && key != "drive.mode";
}

}  // namespace config_keys

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\f\v");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\f\v");
    return s.substr(first, last - first + 1);
}

}  // namespace detail

inline ConfigValues parse_config_text(std::string_view text) {
    ConfigValues values;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", "", line_no);
        const std::string key(detail::trim(line.substr(0, eq)));
        const std::string value(detail::trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError("empty key", "", line_no);
        if (!config_keys::known(key)) throw ConfigError("unknown key", key, line_no);
        if (value.empty()) throw ConfigError("empty value", key, line_no);
        if (values.contains(key)) throw ConfigError("duplicate key", key, line_no);
        values.emplace(key, ConfigEntry{value, line_no});
    }
    return values;
}

namespace detail {

class ValueReader {
public:
    explicit ValueReader(const ConfigValues& v) : v_(v) {}

    const ConfigEntry& entry(std::string_view key) const {
        const auto it = v_.find(key);
        if (it == v_.end()) throw ConfigError("missing required key", std::string(key));
        return it->second;
    }

    bool has(std::string_view key) const { return v_.contains(key); }

    double number(std::string_view key) const {
        const ConfigEntry& e = entry(key);
        double x = 0.0;
        const char* end = e.value.data() + e.value.size();
        const auto [ptr, ec] = std::from_chars(e.value.data(), end, x);
        if (ec != std::errc() || ptr != end || !std::isfinite(x))
            throw ConfigError("not a finite number: '" + e.value + "'", std::string(key), e.line);
        return x;
    }

    double positive(std::string_view key) const { return checked(key, [](double x) { return x > 0.0; }, "must be > 0"); }
    double nonnegative(std::string_view key) const { return checked(key, [](double x) { return x >= 0.0; }, "must be >= 0"); }

    std::size_t count(std::string_view key) const {
        const ConfigEntry& e = entry(key);
        unsigned long long n = 0;
        const char* end = e.value.data() + e.value.size();
        const auto [ptr, ec] = std::from_chars(e.value.data(), end, n);
        if (ec != std::errc() || ptr != end || n < 1)
            throw ConfigError("expected a positive integer: '" + e.value + "'", std::string(key), e.line);
        return static_cast<std::size_t>(n);
    }

    template <class F>
    double checked(std::string_view key, F ok, const char* what) const {
        const double x = number(key);
        if (!ok(x)) throw ConfigError(what, std::string(key), entry(key).line);
        return x;
    }

    std::size_t line(std::string_view key) const { return entry(key).line; }

private:
    const ConfigValues& v_;
};

}  // namespace detail

/// Builds a validated Scenario. Every failure names the offending key (and line when known).
inline Scenario scenario_from_values(const ConfigValues& values, const std::string& fallback_name = "scenario") {
    for (std::string_view key : config_keys::required())
        if (!values.contains(key)) throw ConfigError("missing required key", std::string(key));

    const detail::ValueReader r(values);
    Scenario s;
    s.source = values;
    s.name = r.has("name") ? r.entry("name").value : fallback_name;

    const std::string& conv = r.entry("convention.frequency").value;
    if (conv == "ordinary")
        s.params.frequency_convention = FrequencyConvention::ordinary;
    else if (conv == "angular")
        s.params.frequency_convention = FrequencyConvention::angular;
    else
        throw ConfigError("expected ordinary|angular, got '" + conv + "'", "convention.frequency",
                          r.line("convention.frequency"));

    const std::string& mode = r.entry("drive.mode").value;
    if (mode == "both")
        s.drive_mode = DriveMode::both;
    else if (mode == "left_only")
        s.drive_mode = DriveMode::left_only;
    else if (mode == "right_only")
        s.drive_mode = DriveMode::right_only;
    else
        throw ConfigError("expected both|left_only|right_only, got '" + mode + "'", "drive.mode", r.line("drive.mode"));

    auto& mech = s.params.mechanical;
    mech.mass = r.positive("mech.mass_kg");
    mech.frequency = r.positive("mech.freq");
    mech.quality_factor = r.positive("mech.Q");
    mech.bath_temperature = r.nonnegative("mech.temperature_K");

    auto cavity = [&](const std::string& side, CavityParams& c) {
        c.length = r.positive(side + ".length_m");
        c.finesse = r.positive(side + ".finesse");
        c.wavelength = r.positive(side + ".wavelength_m");
        c.drive_power = r.nonnegative(side + ".power_W");
        c.drive_detuning = r.number(side + ".detuning") * mech.frequency;
    };
    cavity("left", s.params.left);
    cavity("right", s.params.right);
    if (s.drive_mode == DriveMode::left_only) s.params.right.drive_power = 0.0;
    if (s.drive_mode == DriveMode::right_only) s.params.left.drive_power = 0.0;

    if (r.has("analysis.eps_on")) s.eps_on = r.positive("analysis.eps_on");
    if (r.has("analysis.hold_periods")) s.hold_periods = r.positive("analysis.hold_periods");

    const DerivedParams d = derive_params(s.params);
    const double t_end = r.positive("sim.t_end_s");
    const double dt = r.nonnegative("sim.dt_s");
    if (dt > 0.0 && dt > max_step(d) * (1.0 + 1e-12))
        throw ConfigError("step exceeds the resolution limit " + std::to_string(max_step(d)) + " s", "sim.dt_s",
                          r.line("sim.dt_s"));
    s.trajectory = default_trajectory(d, t_end, dt, r.count("sim.sample_every"));
    if (!(s.trajectory.dt < t_end))
        throw ConfigError("t_end must exceed the integration step", "sim.t_end_s", r.line("sim.t_end_s"));
    return s;
}

inline Scenario parse_config(std::string_view text, const std::string& fallback_name = "scenario") {
    return scenario_from_values(parse_config_text(text), fallback_name);
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("cannot read '" + path.string() + "'");
    return ss.str();
}

inline Scenario load_config(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) throw ConfigError("no such config file '" + path.string() + "'", "");
    return parse_config(read_text_file(path), path.stem().string());
}

}  // namespace optomech
