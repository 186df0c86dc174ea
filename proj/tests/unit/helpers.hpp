#pragma once

#include <cmath>
#include <string>

#include "optomech/core_model.hpp"
#include "optomech/runner/config.hpp"
#include "optomech/runner/presets.hpp"

namespace optomech::test {

/// Parameters of the fig2 scenarios, angular reading.
inline PhysicalParams fig2_params(double right_length = 0.022) {
    PhysicalParams p;
    p.frequency_convention = FrequencyConvention::angular;
    p.mechanical = {1e-11, 1e6, 2e4, 0.0};
    p.left = {0.022, 2.6e5, 1064e-9, 70e-6, 6.5e6};
    p.right = {right_length, 2.6e5, 1064e-9, 70e-6, 6.5e6};
    return p;
}

/// Hand-set nondimensional rates (no derivation from hardware parameters).
inline DerivedParams unit_rates() {
    DerivedParams d;
    d.kappa_L = d.kappa_R = 1.0;
    d.omega_M = 1.0;
    d.Gamma_M = 0.1;
    d.Delta0_L = d.Delta0_R = 0.5;
    return d;
}

/// Preset text with one key replaced.
inline Scenario preset_with(std::string_view preset, const std::string& key, const std::string& value) {
    ConfigValues v = parse_config_text(*presets::text(preset));
    v[key] = ConfigEntry{value, 0};
    return scenario_from_values(v, std::string(preset));
}

inline double rel_err(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace optomech::test
