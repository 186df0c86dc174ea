// presets.hpp: built-in scenarios; byte-identical to the files under presets/.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "optomech/runner/config.hpp"

namespace optomech::presets {

inline constexpr std::string_view fig2_sym = R"cfg(# Symmetric double cavity, both ends driven.
name = fig2-sym
convention.frequency = angular
drive.mode = both

mech.mass_kg = 1e-11
mech.freq = 1e6
mech.Q = 20000
mech.temperature_K = 0

left.length_m = 0.022
left.finesse = 2.6e5
left.wavelength_m = 1064e-9
left.power_W = 70e-6
left.detuning = 6.5

right.length_m = 0.022
right.finesse = 2.6e5
right.wavelength_m = 1064e-9
right.power_W = 70e-6
right.detuning = 6.5

sim.t_end_s = 400e-6
sim.dt_s = 0
sim.sample_every = 32
)cfg";

inline constexpr std::string_view fig2_asym = R"cfg(# Right cavity shortened to 19 mm, everything else as fig2-sym.
name = fig2-asym
convention.frequency = angular
drive.mode = both

mech.mass_kg = 1e-11
mech.freq = 1e6
mech.Q = 20000
mech.temperature_K = 0

left.length_m = 0.022
left.finesse = 2.6e5
left.wavelength_m = 1064e-9
left.power_W = 70e-6
left.detuning = 6.5

right.length_m = 0.019
right.finesse = 2.6e5
right.wavelength_m = 1064e-9
right.power_W = 70e-6
right.detuning = 6.5

sim.t_end_s = 400e-6
sim.dt_s = 0
sim.sample_every = 32
)cfg";

inline constexpr std::string_view fig2_left_only = R"cfg(# fig2-sym with a single laser entering from the left.
name = fig2-left-only
convention.frequency = angular
drive.mode = left_only

mech.mass_kg = 1e-11
mech.freq = 1e6
mech.Q = 20000
mech.temperature_K = 0

left.length_m = 0.022
left.finesse = 2.6e5
left.wavelength_m = 1064e-9
left.power_W = 70e-6
left.detuning = 6.5

right.length_m = 0.022
right.finesse = 2.6e5
right.wavelength_m = 1064e-9
right.power_W = 70e-6
right.detuning = 6.5

sim.t_end_s = 400e-6
sim.dt_s = 0
sim.sample_every = 32
)cfg";

inline constexpr std::string_view fig3 = R"cfg(# Higher power, lower finesse, 22 mm / 20 mm cavities.
name = fig3
convention.frequency = angular
drive.mode = both

mech.mass_kg = 1e-11
mech.freq = 1e6
mech.Q = 20000
mech.temperature_K = 0

left.length_m = 0.022
left.finesse = 1.0e5
left.wavelength_m = 1064e-9
left.power_W = 80e-6
left.detuning = 6.5

right.length_m = 0.020
right.finesse = 1.0e5
right.wavelength_m = 1064e-9
right.power_W = 80e-6
right.detuning = 6.5

sim.t_end_s = 400e-6
sim.dt_s = 0
sim.sample_every = 32
)cfg";

struct Preset {
    std::string_view name;
    std::string_view file;  // file name under presets/
    std::string_view text;
};

inline constexpr std::array<Preset, 4> all{{
    {"fig2-sym", "fig2_sym.cfg", fig2_sym},
    {"fig2-asym", "fig2_asym.cfg", fig2_asym},
    {"fig2-left-only", "fig2_left_only.cfg", fig2_left_only},
    {"fig3", "fig3.cfg", fig3},
}};

inline std::optional<std::string_view> text(std::string_view name) {
    for (const Preset& p : all)
        if (p.name == name) return p.text;
    return std::nullopt;
}

inline Scenario load(std::string_view name) {
    const auto t = text(name);
    if (!t) throw ConfigError("unknown scenario '" + std::string(name) + "'", "");
    return parse_config(*t, std::string(name));
}

}  // namespace optomech::presets
