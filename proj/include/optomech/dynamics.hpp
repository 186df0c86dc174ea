// dynamics.hpp: mean-field equations and the Lyapunov equation for the covariance,
// co-integrated with fixed-step classical RK4.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "optomech/core_model.hpp"

namespace optomech {

/// Time derivative of the classical means (noise dropped).
///
///   q̇   = Ω p
///   ṗ   = −Ω q − Γ p + η_R|α_R|² − η_L|α_L|²
///   α̇_L = −(κ_L + iΔ0_L) α_L − i η_L q α_L + ε_L
///   α̇_R = −(κ_R + iΔ0_R) α_R + i η_R q α_R + ε_R
///
/// The evaluation order is chosen so that the L↔R mirror map is reproduced bit for bit.
inline MeanState mean_field_rhs(const DerivedParams& d, const MeanState& s) {
    using cd = std::complex<double>;
    const double pressure = d.eta_R() * std::norm(s.alpha_R) - d.eta_L() * std::norm(s.alpha_L);

    MeanState ds;
    ds.q = d.omega_M * s.p;
    ds.p = (-d.omega_M * s.q - d.Gamma_M * s.p) + pressure;
    ds.alpha_L = cd(-d.kappa_L, -d.Delta0_L) * s.alpha_L + cd(0.0, -(d.eta_L() * s.q)) * s.alpha_L + d.eps_L;
    ds.alpha_R = cd(-d.kappa_R, -d.Delta0_R) * s.alpha_R + cd(0.0, d.eta_R() * s.q) * s.alpha_R + d.eps_R;
    return ds;
}

/// A V + V Aᵀ + D, symmetrized.
inline Mat6 covariance_rhs(const Mat6& A, const Mat6& V, const Mat6& D) {
    const Mat6 AV = A * V;
    Mat6 out;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) out(i, j) = AV(i, j) + AV(j, i) + D(i, j);
    return symmetrized(out);
}

struct TrajectoryConfig {
    double t_end = 0.0;             // s
    double dt = 0.0;                // s
    std::size_t sample_every = 1;   // steps between recorded samples
    MeanState initial_mean{};
    CovMatrix initial_cov{};
};

struct TrajectorySample {
    double t = 0.0;
    MeanState mean;
    CovMatrix cov;
};

namespace detail {

/// Shortest time scale of the linear dynamics: min(1/κ_L, 1/κ_R, 1/Ω_M, 1/|Δ0_L|, 1/|Δ0_R|).
inline double fastest_period(const DerivedParams& d) {
    double tmin = std::numeric_limits<double>::infinity();
    for (double rate : {d.kappa_L, d.kappa_R, d.omega_M, std::abs(d.Delta0_L), std::abs(d.Delta0_R)})
        if (rate > 0.0) tmin = std::min(tmin, 1.0 / rate);
    return tmin;
}

}  // namespace detail

/// Largest admissible step: 0.05 × the fastest time scale.
inline double max_step(const DerivedParams& d) { return 0.05 * detail::fastest_period(d); }

/// Default step: 0.02 × the fastest time scale.
inline double default_step(const DerivedParams& d) { return 0.02 * detail::fastest_period(d); }

inline void validate(const TrajectoryConfig& cfg, const DerivedParams& d) {
    if (!(cfg.dt > 0.0) || !(cfg.dt < cfg.t_end))
        throw InvalidParameter("trajectory requires 0 < dt < t_end");
    if (cfg.sample_every < 1) throw InvalidParameter("sample_every must be >= 1");
    const double limit = max_step(d);
    if (cfg.dt > limit * (1.0 + 1e-12))
        throw InvalidParameter("dt = " + std::to_string(cfg.dt) + " s exceeds the resolution limit " +
                               std::to_string(limit) + " s");
    if (!cfg.initial_mean.finite()) throw InvalidParameter("initial mean must be finite");
    if (!all_finite(cfg.initial_cov.matrix())) throw InvalidParameter("initial covariance must be finite");
}

/// Default pre-drive state: resonator at rest in its thermal state, cavities empty (vacuum).
inline TrajectoryConfig default_trajectory(const DerivedParams& d, double t_end, double dt = 0.0,
                                           std::size_t sample_every = 1) {
    TrajectoryConfig cfg;
    cfg.t_end = t_end;
    cfg.dt = dt > 0.0 ? dt : default_step(d);
    cfg.sample_every = sample_every;
    cfg.initial_cov = CovMatrix::thermal(d.nbar);
    return cfg;
}

/// Number of steps for a horizon; the last step lands at or just past t_end.
inline std::size_t step_count(double t_end, double dt) {
    return static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
}

namespace detail {

inline constexpr std::size_t packed_size = 21;
inline constexpr std::size_t state_size = 6 + packed_size;
using StackedState = std::array<double, state_size>;

/// Row-major upper triangle (i <= j) of a 6x6 symmetric matrix.
inline constexpr std::array<std::array<std::size_t, 6>, 6> packed_index = [] {
    std::array<std::array<std::size_t, 6>, 6> idx{};
    std::size_t k = 0;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i; j < 6; ++j) idx[i][j] = idx[j][i] = k++;
    return idx;
}();

inline MeanState unpack_mean(const StackedState& y) {
    return {y[0], y[1], {y[2], y[3]}, {y[4], y[5]}};
}

inline void pack_mean(const MeanState& s, StackedState& y) {
    y[0] = s.q;
    y[1] = s.p;
    y[2] = s.alpha_L.real();
    y[3] = s.alpha_L.imag();
    y[4] = s.alpha_R.real();
    y[5] = s.alpha_R.imag();
}

inline Mat6 unpack_cov(const StackedState& y) {
    Mat6 V;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) V(i, j) = y[6 + packed_index[i][j]];
    return V;
}

inline void pack_cov(const Mat6& V, StackedState& y) {
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i; j < 6; ++j) y[6 + packed_index[i][j]] = V(i, j);
}

inline void stacked_rhs(const DerivedParams& d, const Mat6& D, const StackedState& y, StackedState& dy) {
    const MeanState s = unpack_mean(y);
    pack_mean(mean_field_rhs(d, s), dy);

    const Mat6 A = drift_matrix(d, s);
    const Mat6 AV = A * unpack_cov(y);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i; j < 6; ++j) dy[6 + packed_index[i][j]] = AV(i, j) + AV(j, i) + D(i, j);
}

inline void check_state(const StackedState& y, double t) {
    static constexpr double limit = 1e12;
    for (std::size_t k = 0; k < y.size(); ++k) {
        if (!std::isfinite(y[k]) || std::abs(y[k]) > limit) {
            throw DivergenceError("integrator diverged at t = " + std::to_string(t) + " s (state component " +
                                  std::to_string(k) + " = " + std::to_string(y[k]) + ")");
        }
    }
}

}  // namespace detail

/// Co-integrates the means and the covariance (21 packed entries) with classical RK4.
/// The drift matrix is rebuilt from the stage mean at every RK stage. The first sample is
/// the initial condition, then every `sample_every`-th step, and always the final step.
inline std::vector<TrajectorySample> integrate(const DerivedParams& d, const TrajectoryConfig& cfg) {
    using detail::StackedState;
    validate(cfg, d);

    const Mat6 D = diffusion_matrix(d);
    const std::size_t n_steps = step_count(cfg.t_end, cfg.dt);
    const double h = cfg.dt;

    StackedState y{};
    detail::pack_mean(cfg.initial_mean, y);
    detail::pack_cov(cfg.initial_cov.matrix(), y);

    std::vector<TrajectorySample> samples;
    samples.reserve(n_steps / cfg.sample_every + 2);
    auto record = [&](double t) {
        samples.push_back({t, detail::unpack_mean(y), CovMatrix(detail::unpack_cov(y))});
    };
    record(0.0);

    StackedState k1, k2, k3, k4, tmp;
    for (std::size_t step = 1; step <= n_steps; ++step) {
        detail::stacked_rhs(d, D, y, k1);
        for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        detail::stacked_rhs(d, D, tmp, k2);
        for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        detail::stacked_rhs(d, D, tmp, k3);
        for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + h * k3[i];
        detail::stacked_rhs(d, D, tmp, k4);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        const double t = static_cast<double>(step) * h;
        detail::check_state(y, t);
        if (step % cfg.sample_every == 0 || step == n_steps) record(t);
    }
    return samples;
}

}  // namespace optomech
