// verify.hpp: quick oracle sweep over the main numerical kernels (the CLI `verify` command).

#pragma once

#include <chrono>
#include <cstdio>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "optomech/dynamics.hpp"
#include "optomech/entanglement.hpp"
#include "optomech/runner/presets.hpp"
#include "optomech/steady_state.hpp"
#include "optomech/testkit/oracles.hpp"
#include "optomech/testkit/stochastic.hpp"

namespace optomech::testkit {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

inline double rel_diff(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline CheckResult check_symplectic(RngSeed seed, std::size_t n = 1000) {
    Rng rng(seed);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const Mat4 V = random_physical_covariance(rng);
        const auto a = symplectic_eigenvalue_pt(V);
        const auto b = symplectic_spectrum_pt(V);
        worst = std::max({worst, rel_diff(a.v_minus, b.v_minus), rel_diff(a.v_plus, b.v_plus)});
    }
    return {"symplectic spectrum vs iΩV^PT eigenvalues", worst < 1e-10, "max rel diff " + fmt(worst)};
}

inline CheckResult check_stability(RngSeed seed, std::size_t n = 500) {
    Rng rng(seed);
    std::size_t disagree = 0, indeterminate = 0;
    for (std::size_t k = 0; k < n; ++k) {
        Mat6 A = random_stable_matrix(rng);
        if (k % 2 == 1) A = A + 2.0 * std::abs(rng.normal()) * Mat6::identity();  // often unstable
        const double m = max_real_eigenvalue(A);
        if (std::abs(m) < 1e-6 * max_abs(A)) continue;
        const auto v = stability_verdict(A);
        if (v == StabilityVerdict::indeterminate)
            ++indeterminate;
        else if ((v == StabilityVerdict::stable) != (m < 0.0))
            ++disagree;
    }
    return {"Routh-Hurwitz vs eigenvalue real parts", disagree == 0 && indeterminate == 0,
            std::to_string(disagree) + " disagreements, " + std::to_string(indeterminate) + " indeterminate"};
}

inline CheckResult check_quartic() {
    // κ = Δ0 = 1, stiffness 1, η = 1, ηε = 1.1 × boundary
    const SymmetricParams s{1.0, 1.0, 1.0, 1.1 * std::sqrt(1.0 / 4.0) * 2.0, 1.0};
    const auto c = quartic_coefficients(s);
    const auto scan = poly_real_roots_scan({c.begin(), c.end()}, -10.0, 10.0, 200000);
    const auto closed = symmetric_quartic(s).q;
    bool ok = scan.size() == closed.size();
    double worst = 0.0;
    for (std::size_t i = 0; ok && i < scan.size(); ++i) worst = std::max(worst, std::abs(scan[i] - closed[i].value));
    ok = ok && worst < 1e-9;
    return {"closed-form biquadratic vs sign scan", ok,
            std::to_string(closed.size()) + " roots, max diff " + fmt(worst)};
}

inline CheckResult check_drift_jacobian() {
    const DerivedParams d = derive_params(presets::load("fig2-asym").params);
    const MeanState s = steady_mean(d, fixed_points(d).front().q);
    const Mat6 A = drift_matrix(d, s);
    // the fluctuation coordinates are quadratures: X = √2 Re α
    const Mat6 T = Mat6::diagonal({1.0, 1.0, std::sqrt(2.0), std::sqrt(2.0), std::sqrt(2.0), std::sqrt(2.0)});
    const Mat6 Ti = Mat6::diagonal({1.0, 1.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0),
                                    1.0 / std::sqrt(2.0)});
    const Mat6 J = T * finite_difference_jacobian([&](const MeanState& m) { return mean_field_rhs(d, m); }, s) * Ti;
    const double err = max_abs(A - J) / max_abs(A);
    return {"drift matrix vs finite-difference Jacobian", err < 1e-6, "rel err " + fmt(err)};
}

inline CheckResult check_covariance_rhs(RngSeed seed) {
    Rng rng(seed);
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        Mat6 A, V, D;
        for (auto& x : A.data) x = rng.normal();
        for (auto& x : V.data) x = rng.normal();
        V = symmetrized(V);
        for (std::size_t i = 0; i < 6; ++i) D(i, i) = std::abs(rng.normal());
        const Mat6 a = covariance_rhs(A, V, D);
        const Mat6 b = covariance_rhs_naive(A, V, D);
        worst = std::max(worst, max_abs(a - b) / std::max(1.0, max_abs(b)));
    }
    return {"covariance RHS vs naive summation", worst < 1e-12, "max err " + fmt(worst)};
}

inline CheckResult check_vacuum_monte_carlo(RngSeed seed) {
    PhysicalParams p;
    p.mechanical = {1e-11, 1e6, 2e4, 0.0};
    p.left = {0.022, 2.6e5, 1064e-9, 0.0, 0.0};
    p.right = p.left;
    const DerivedParams d = derive_params(p);
    TrajectoryConfig cfg = default_trajectory(d, 3.0 / d.kappa_L, max_step(d));
    cfg.initial_cov = CovMatrix::diagonal({0.5, 0.5, 2.0, 2.0, 2.0, 2.0});
    const auto est = stochastic_covariance_estimate(d, cfg, 1000, seed);
    const double expected = 0.5 + 1.5 * std::exp(-2.0 * d.kappa_L * est.t_end);
    const double z = std::abs(est.covariance(2, 2) - expected) / est.standard_error(2, 2);
    return {"Monte Carlo cavity relaxation toward vacuum", z < 4.0, "|z| = " + fmt(z)};
}

inline std::vector<CheckResult> run_verification(RngSeed seed = {20240601}) {
    std::vector<std::function<CheckResult()>> checks{
        [&] { return check_symplectic(sub_seed(seed, 1)); },
        [&] { return check_stability(sub_seed(seed, 2)); },
        [] { return check_quartic(); },
        [] { return check_drift_jacobian(); },
        [&] { return check_covariance_rhs(sub_seed(seed, 3)); },
        [&] { return check_vacuum_monte_carlo(sub_seed(seed, 4)); },
    };
    std::vector<CheckResult> out;
    for (auto& c : checks) {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            r = c();
        } catch (const std::exception& e) {
            r = {"(exception)", false, e.what()};
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(r);
    }
    return out;
}

}  // namespace optomech::testkit
