// stochastic.hpp: Monte Carlo estimate of the fluctuation covariance.
//
// The linearised fluctuations obey du = A(t) u dt + B dW with B Bᵀ = D, which is the process
// whose second moments satisfy V̇ = AV + VAᵀ + D. Each step freezes A at the step midpoint and
// advances u exactly for the frozen coefficients:
//   u ← Φ u + L ξ,   Φ = e^{Ah},   L Lᵀ = ∫₀ʰ e^{As} D e^{Aᵀs} ds,   ξ ~ N(0, I).
// Φ and L depend only on the deterministic mean trajectory, so they are computed once and
// shared by every sample path. The mean trajectory itself is integrated here with a
// midpoint-refined RK4 that is independent of the production integrator.

#pragma once

#include <cmath>
#include <algorithm>
#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "optomech/core_model.hpp"
#include "optomech/dynamics.hpp"
#include "optomech/testkit/oracles.hpp"
#include "optomech/testkit/rng.hpp"

namespace optomech::testkit {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using EMat6 = Eigen::Matrix<double, 6, 6>;

struct CovarianceEstimate {
    Mat6 covariance;       // sample second moments of u at t_end
    Mat6 standard_error;   // per-entry standard error of the estimate
    std::size_t trajectories = 0;
    double t_end = 0.0;
};

namespace detail {

/// Mean-field right-hand side written out in real coordinates (q, p, xL, yL, xR, yR), α = x + iy.
inline Vec6 mean_rhs_real(const DerivedParams& d, const Vec6& y) {
    const double etaL = std::sqrt(2.0) * d.g0_L;
    const double etaR = std::sqrt(2.0) * d.g0_R;
    const double q = y(0), p = y(1);
    const double xL = y(2), yL = y(3), xR = y(4), yR = y(5);
    const double wL = d.Delta0_L + etaL * q;  // α̇ = −κα − iwα + ε
    const double wR = d.Delta0_R - etaR * q;
    Vec6 f;
    f(0) = d.omega_M * p;
    f(1) = -d.omega_M * q - d.Gamma_M * p - etaL * (xL * xL + yL * yL) + etaR * (xR * xR + yR * yR);
    f(2) = -d.kappa_L * xL + wL * yL + d.eps_L;
    f(3) = -d.kappa_L * yL - wL * xL;
    f(4) = -d.kappa_R * xR + wR * yR + d.eps_R;
    f(5) = -d.kappa_R * yR - wR * xR;
    return f;
}

/// Linearisation of mean_rhs_real, differentiated by hand in amplitude coordinates and mapped
/// to quadratures (X = √2 Re α, Y = √2 Im α).
inline EMat6 drift_real(const DerivedParams& d, const Vec6& y) {
    const double etaL = std::sqrt(2.0) * d.g0_L;
    const double etaR = std::sqrt(2.0) * d.g0_R;
    const double q = y(0);
    const double xL = y(2), yL = y(3), xR = y(4), yR = y(5);
    const double wL = d.Delta0_L + etaL * q;
    const double wR = d.Delta0_R - etaR * q;
    EMat6 A = EMat6::Zero();
    A(0, 1) = d.omega_M;
    A(1, 0) = -d.omega_M;
    A(1, 1) = -d.Gamma_M;
    A(1, 2) = -2.0 * etaL * xL;
    A(1, 3) = -2.0 * etaL * yL;
    A(1, 4) = 2.0 * etaR * xR;
    A(1, 5) = 2.0 * etaR * yR;
    A(2, 0) = etaL * yL;
    A(2, 2) = -d.kappa_L;
    A(2, 3) = wL;
    A(3, 0) = -etaL * xL;
    A(3, 2) = -wL;
    A(3, 3) = -d.kappa_L;
    A(4, 0) = -etaR * yR;
    A(4, 4) = -d.kappa_R;
    A(4, 5) = wR;
    A(5, 0) = etaR * xR;
    A(5, 4) = -wR;
    A(5, 5) = -d.kappa_R;
    Vec6 t;
    t << 1.0, 1.0, std::sqrt(2.0), std::sqrt(2.0), std::sqrt(2.0), std::sqrt(2.0);
    return t.asDiagonal() * A * t.cwiseInverse().asDiagonal();
}

/// e^{M}, Taylor series with scaling and squaring.
inline EMat6 expm(const EMat6& M) {
    const double norm = M.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.25) {
        scale *= 0.5;
        ++squarings;
    }
    const EMat6 X = scale * M;
    EMat6 term = EMat6::Identity(), sum = EMat6::Identity();
    for (int k = 1; k <= 14; ++k) {
        term = term * X / double(k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

/// Factor L with L Lᵀ = Q for a symmetric positive semidefinite Q.
inline EMat6 psd_factor(const EMat6& Q) {
    Eigen::SelfAdjointEigenSolver<EMat6> es(0.5 * (Q + Q.transpose()));
    const Vec6 lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * lam.asDiagonal();
}

struct Propagator {
    std::vector<EMat6> phi;
    std::vector<EMat6> noise;
};

/// Per-step transition and noise factors along the mean trajectory; the mean is advanced with
/// two RK4 half steps per step so the midpoint value is available.
inline Propagator build_propagator(const DerivedParams& d, const TrajectoryConfig& cfg, std::size_t n_steps) {
    const EMat6 D = to_eigen(diffusion_matrix(d));
    const double h = cfg.dt;
    auto rk4 = [&](Vec6& y, double dt) {
        const Vec6 k1 = mean_rhs_real(d, y);
        const Vec6 k2 = mean_rhs_real(d, y + 0.5 * dt * k1);
        const Vec6 k3 = mean_rhs_real(d, y + 0.5 * dt * k2);
        const Vec6 k4 = mean_rhs_real(d, y + dt * k3);
        y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };

    Vec6 y;
    y << cfg.initial_mean.q, cfg.initial_mean.p, cfg.initial_mean.alpha_L.real(), cfg.initial_mean.alpha_L.imag(),
        cfg.initial_mean.alpha_R.real(), cfg.initial_mean.alpha_R.imag();

    Propagator prop;
    prop.phi.reserve(n_steps);
    prop.noise.reserve(n_steps);
    for (std::size_t n = 0; n < n_steps; ++n) {
        rk4(y, 0.5 * h);
        const EMat6 A = drift_real(d, y);
        rk4(y, 0.5 * h);

        const EMat6 half = expm(0.5 * h * A);
        const EMat6 full = half * half;
        // Simpson rule for ∫₀ʰ e^{As} D e^{Aᵀs} ds
        const EMat6 Q = h / 6.0 * (D + 4.0 * half * D * half.transpose() + full * D * full.transpose());
        prop.phi.push_back(full);
        prop.noise.push_back(psd_factor(Q));
    }
    return prop;
}

/// Neumaier-compensated running sum.
struct CompensatedSum {
    double sum = 0.0;
    double c = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            c += (sum - t) + x;
        else
            c += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + c; }
};

}  // namespace detail

/// Sample covariance of the fluctuation vector at the end of `cfg`, over `n_traj` paths.
/// Path k uses the stream sub_seed(seed, k); initial fluctuations are drawn from cfg.initial_cov.
inline CovarianceEstimate stochastic_covariance_estimate(const DerivedParams& d, const TrajectoryConfig& cfg,
                                                         std::size_t n_traj, RngSeed seed) {
    validate(cfg, d);
    if (n_traj < 1000) throw InvalidParameter("stochastic_covariance_estimate: need at least 1000 trajectories");

    const std::size_t n_steps = step_count(cfg.t_end, cfg.dt);
    const detail::Propagator prop = detail::build_propagator(d, cfg, n_steps);
    const EMat6 init = detail::psd_factor(to_eigen(cfg.initial_cov.matrix()));

    // Paths advance in blocks so each step's Φ and L are loaded once per block; every path
    // still draws from its own stream, so the result does not depend on the block size.
    constexpr std::size_t block = 64;
    std::array<detail::CompensatedSum, 36> m1, m2;  // Σ u_i u_j and Σ (u_i u_j)², in path order
    std::vector<Rng> rngs;
    Eigen::Matrix<double, 6, Eigen::Dynamic> U, Xi;
    for (std::size_t k0 = 0; k0 < n_traj; k0 += block) {
        const std::size_t nb = std::min(block, n_traj - k0);
        rngs.clear();
        U.resize(6, Eigen::Index(nb));
        Xi.resize(6, Eigen::Index(nb));
        for (std::size_t b = 0; b < nb; ++b) {
            rngs.emplace_back(sub_seed(seed, k0 + b));
            Vec6 xi;
            for (int i = 0; i < 6; ++i) xi(i) = rngs[b].normal();
            U.col(Eigen::Index(b)) = init * xi;
        }
        for (std::size_t n = 0; n < n_steps; ++n) {
            for (std::size_t b = 0; b < nb; ++b)
                for (int i = 0; i < 6; ++i) Xi(i, Eigen::Index(b)) = rngs[b].normal();
            U = prop.phi[n] * U + prop.noise[n] * Xi;
        }
        for (std::size_t b = 0; b < nb; ++b)
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) {
                    const double x = U(i, Eigen::Index(b)) * U(j, Eigen::Index(b));
                    m1[std::size_t(6 * i + j)].add(x);
                    m2[std::size_t(6 * i + j)].add(x * x);
                }
    }

    CovarianceEstimate est;
    est.trajectories = n_traj;
    est.t_end = static_cast<double>(n_steps) * cfg.dt;
    const double N = static_cast<double>(n_traj);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            const double mean = m1[6 * i + j].value() / N;
            const double var = std::max(0.0, m2[6 * i + j].value() / N - mean * mean) * N / (N - 1.0);
            est.covariance(i, j) = mean;
            est.standard_error(i, j) = std::sqrt(var / N);
        }
    return est;
}

}  // namespace optomech::testkit
