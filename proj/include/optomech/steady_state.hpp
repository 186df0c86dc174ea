// steady_state.hpp: equilibria of the mean-field equations, the closed-form symmetric
// quartic with its existence conditions, and Routh–Hurwitz stability of the drift matrix.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "optomech/core_model.hpp"
#include "optomech/polynomial.hpp"

namespace optomech {

// ---------------------------------------------------------------------------------------------
// stability
// ---------------------------------------------------------------------------------------------

enum class StabilityVerdict { stable, unstable, indeterminate };

inline const char* to_string(StabilityVerdict v) {
    switch (v) {
        case StabilityVerdict::stable: return "stable";
        case StabilityVerdict::unstable: return "unstable";
        case StabilityVerdict::indeterminate: return "indeterminate";
    }
    return "?";
}

/// Monic characteristic polynomial det(λI − A), descending: a[0] = 1, a[k] multiplies λ^(6−k).
/// Faddeev–LeVerrier recursion in extended precision.
inline std::array<long double, 7> characteristic_polynomial(const Mat6& A) {
    using LMat = std::array<std::array<long double, 6>, 6>;
    LMat a{}, m{};
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) a[i][j] = A(i, j);
        m[i][i] = 1.0L;
    }

    std::array<long double, 7> coeff{};
    coeff[0] = 1.0L;
    for (std::size_t k = 1; k <= 6; ++k) {
        LMat am{};
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t l = 0; l < 6; ++l) {
                const long double ail = a[i][l];
                for (std::size_t j = 0; j < 6; ++j) am[i][j] += ail * m[l][j];
            }
        long double tr = 0.0L;
        for (std::size_t i = 0; i < 6; ++i) tr += am[i][i];
        coeff[k] = -tr / static_cast<long double>(k);
        m = am;
        for (std::size_t i = 0; i < 6; ++i) m[i][i] += coeff[k];
    }
    return coeff;
}

/// Routh–Hurwitz test on a descending coefficient list with positive leading coefficient.
/// A first-column pivot below `rel_tol` × (largest coefficient magnitude) is a marginal case.
template <std::size_t N>
StabilityVerdict routh_hurwitz(const std::array<long double, N>& a, long double rel_tol = 1e-12L) {
    static_assert(N >= 2);
    constexpr std::size_t n = N - 1;  // degree
    constexpr std::size_t width = n / 2 + 1;

    long double scale = 0.0L;
    for (long double c : a) scale = std::max(scale, std::abs(c));
    const long double tol = rel_tol * scale;

    std::array<std::array<long double, width + 1>, N> r{};
    for (std::size_t j = 0; 2 * j <= n; ++j) r[0][j] = a[2 * j];
    for (std::size_t j = 0; 2 * j + 1 <= n; ++j) r[1][j] = a[2 * j + 1];

    for (std::size_t i = 0; i <= n; ++i) {
        if (i >= 2) {
            for (std::size_t j = 0; j < width; ++j)
                r[i][j] = (r[i - 1][0] * r[i - 2][j + 1] - r[i - 2][0] * r[i - 1][j + 1]) / r[i - 1][0];
        }
        if (std::abs(r[i][0]) <= tol) return StabilityVerdict::indeterminate;
        if (r[i][0] < 0.0L) return StabilityVerdict::unstable;
    }
    return StabilityVerdict::stable;
}

/// Three-way verdict on whether every eigenvalue of A has a strictly negative real part.
/// A is rescaled by its largest entry before forming the characteristic polynomial.
inline StabilityVerdict stability_verdict(const Mat6& A) {
    if (!all_finite(A)) throw InvalidParameter("stability: matrix must be finite");
    const double s = max_abs(A);
    if (s == 0.0) return StabilityVerdict::indeterminate;
    return routh_hurwitz(characteristic_polynomial((1.0 / s) * A));
}

/// True iff A is Hurwitz; marginal and unstable cases both give false.
inline bool stability(const Mat6& A) { return stability_verdict(A) == StabilityVerdict::stable; }

// ---------------------------------------------------------------------------------------------
// fixed points
// ---------------------------------------------------------------------------------------------

struct SteadyState {
    double q = 0.0;
    std::complex<double> alpha_L{};
    std::complex<double> alpha_R{};
    bool stable = false;
    StabilityVerdict verdict = StabilityVerdict::indeterminate;
    double residual = 0.0;  // max-abs of the fixed-point equations, relative to their scale
    int multiplicity = 1;

    MeanState mean() const { return {q, 0.0, alpha_L, alpha_R}; }
};

/// Cavity amplitudes slaved to a mechanical displacement:
/// α_L = ε_L / (κ_L + iΔ_L(q)),  α_R = ε_R / (κ_R + iΔ_R(q)).
inline MeanState steady_mean(const DerivedParams& d, double q) {
    using cd = std::complex<double>;
    MeanState s;
    s.q = q;
    s.alpha_L = d.eps_L / cd(d.kappa_L, dynamic_detuning_L(d, q));
    s.alpha_R = d.eps_R / cd(d.kappa_R, dynamic_detuning_R(d, q));
    return s;
}

/// Force balance f(q) = Ω q + η_L|α_L(q)|² − η_R|α_R(q)|² and its scale Ω|q| + η_L|α_L|² + η_R|α_R|².
inline std::pair<double, double> force_balance(const DerivedParams& d, double q) {
    const MeanState s = steady_mean(d, q);
    const double fl = d.eta_L() * std::norm(s.alpha_L);
    const double fr = d.eta_R() * std::norm(s.alpha_R);
    return {d.omega_M * q + fl - fr, d.omega_M * std::abs(q) + fl + fr};
}

/// Max-abs of all fixed-point equations (mean_field_rhs components) at `s`, relative to the
/// magnitude of the largest individual term.
inline double fixed_point_residual(const DerivedParams& d, const MeanState& s) {
    const double ql = d.eta_L() * std::norm(s.alpha_L);
    const double qr = d.eta_R() * std::norm(s.alpha_R);
    const double aL = std::abs(s.alpha_L), aR = std::abs(s.alpha_R);

    const std::complex<double> rl =
        std::complex<double>(-d.kappa_L, -dynamic_detuning_L(d, s.q)) * s.alpha_L + d.eps_L;
    const std::complex<double> rr =
        std::complex<double>(-d.kappa_R, -dynamic_detuning_R(d, s.q)) * s.alpha_R + d.eps_R;
    const double rp = -d.omega_M * s.q - d.Gamma_M * s.p + qr - ql;
    const double rq = d.omega_M * s.p;

    const double scale_p = d.omega_M * std::abs(s.q) + d.Gamma_M * std::abs(s.p) + ql + qr;
    const double scale_L = std::hypot(d.kappa_L, dynamic_detuning_L(d, s.q)) * aL + d.eps_L;
    const double scale_R = std::hypot(d.kappa_R, dynamic_detuning_R(d, s.q)) * aR + d.eps_R;
    auto rel = [](double r, double scale) { return scale > 0.0 ? std::abs(r) / scale : std::abs(r); };

    return std::max({rel(rq, d.omega_M * std::abs(s.p)), rel(rp, scale_p), rel(std::abs(rl), scale_L),
                     rel(std::abs(rr), scale_R)});
}

/// Half-width of the interval that contains every equilibrium displacement:
/// 10 × the largest single-cavity estimate η ε² / (Ω κ²).
inline double displacement_bracket(const DerivedParams& d) {
    const double wl = d.eta_L() * d.eps_L * d.eps_L / (d.omega_M * d.kappa_L * d.kappa_L);
    const double wr = d.eta_R() * d.eps_R * d.eps_R / (d.omega_M * d.kappa_R * d.kappa_R);
    return 10.0 * std::max(wl, wr);
}

/// Polynomial in u = q / W whose real roots are the equilibrium displacements (W from
/// displacement_bracket). Clearing the Lorentzian denominators P_σ = κ_σ² + Δ_σ(q)² gives
///   Ω q P_L P_R + η_L ε_L² P_R − η_R ε_R² P_L = 0,
/// degree 5; a zero drive lets the other side's P cancel, leaving a cubic.
inline Polynomial fixed_point_polynomial(const DerivedParams& d, double W) {
    const double eL = d.eta_L() * W, eR = d.eta_R() * W;
    const Polynomial PL{d.kappa_L * d.kappa_L + d.Delta0_L * d.Delta0_L, 2.0 * d.Delta0_L * eL, eL * eL};
    const Polynomial PR{d.kappa_R * d.kappa_R + d.Delta0_R * d.Delta0_R, -2.0 * d.Delta0_R * eR, eR * eR};
    const Polynomial q{0.0, d.omega_M * W};
    const double fL = d.eta_L() * d.eps_L * d.eps_L;
    const double fR = d.eta_R() * d.eps_R * d.eps_R;

    if (fR == 0.0) return q * PL + Polynomial{fL};
    if (fL == 0.0) return q * PR - Polynomial{fR};
    return q * PL * PR + fL * PR - fR * PL;
}

namespace detail {

/// Damped Newton on the force balance; the derivative is analytic.
inline double polish_root(const DerivedParams& d, double q) {
    auto f = [&](double x) { return force_balance(d, x).first; };
    auto df = [&](double x) {
        const double DL = dynamic_detuning_L(d, x), DR = dynamic_detuning_R(d, x);
        const double PL = d.kappa_L * d.kappa_L + DL * DL;
        const double PR = d.kappa_R * d.kappa_R + DR * DR;
        const double el2 = d.eps_L * d.eps_L, er2 = d.eps_R * d.eps_R;
        return d.omega_M - d.eta_L() * el2 * 2.0 * DL * d.eta_L() / (PL * PL) -
               d.eta_R() * er2 * 2.0 * DR * d.eta_R() / (PR * PR);
    };

    double fx = f(q);
    for (int it = 0; it < 60; ++it) {
        const auto [val, scale] = force_balance(d, q);
        if (std::abs(val) <= 1e-12 * scale || val == 0.0) break;
        const double slope = df(q);
        if (slope == 0.0 || !std::isfinite(slope)) break;
        double step = -fx / slope;
        bool improved = false;
        for (int half = 0; half < 40; ++half) {
            const double trial = f(q + step);
            if (std::abs(trial) < std::abs(fx)) {
                q += step;
                fx = trial;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    return q;
}

}  // namespace detail

/// All real equilibria, ascending in q, p = 0. Roots are isolated on the scaled polynomial,
/// then polished on the force balance; each carries its residual and Routh–Hurwitz verdict.
inline std::vector<SteadyState> fixed_points(const DerivedParams& d) {
    std::vector<Root> roots;
    const double W = displacement_bracket(d);
    if (W == 0.0) {
        roots.push_back({0.0, 1});
    } else {
        for (const Root& r : real_roots(fixed_point_polynomial(d, W), -1.0, 1.0)) roots.push_back({r.value * W, r.multiplicity});
    }

    std::vector<SteadyState> out;
    for (const Root& r : roots) {
        SteadyState ss;
        ss.q = r.multiplicity == 1 ? detail::polish_root(d, r.value) : r.value;
        const MeanState m = steady_mean(d, ss.q);
        ss.alpha_L = m.alpha_L;
        ss.alpha_R = m.alpha_R;
        ss.multiplicity = r.multiplicity;
        ss.residual = fixed_point_residual(d, m);
        if (!(ss.residual < 1e-9))
            throw ConvergenceError("steady state at q = " + std::to_string(ss.q) + " has residual " +
                                   std::to_string(ss.residual));
        ss.verdict = stability_verdict(drift_matrix(d, m));
        ss.stable = ss.verdict == StabilityVerdict::stable;
        out.push_back(ss);
    }
    std::sort(out.begin(), out.end(), [](const SteadyState& a, const SteadyState& b) { return a.q < b.q; });
    return out;
}

// ---------------------------------------------------------------------------------------------
// symmetric configuration
// ---------------------------------------------------------------------------------------------

/// Parameters shared by both sides of a symmetric configuration.
struct SymmetricParams {
    double kappa = 0.0;
    double Delta0 = 0.0;
    double eta = 0.0;
    double eps = 0.0;
    double stiffness = 0.0;  // plays the role of mΩ² in the dimensionless equations (= Ω_M)
};

inline bool is_symmetric(const DerivedParams& d, double rel_tol = 1e-12) {
    auto same = [&](double a, double b) { return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b)); };
    return same(d.kappa_L, d.kappa_R) && same(d.Delta0_L, d.Delta0_R) && same(d.eps_L, d.eps_R) &&
           same(d.g0_L, d.g0_R);
}

inline SymmetricParams symmetric_params(const DerivedParams& d) {
    if (!is_symmetric(d)) throw InvalidParameter("configuration is not left/right symmetric");
    return {d.kappa_L, d.Delta0_L, d.eta_L(), d.eps_L, d.omega_M};
}

/// Coefficients (ascending in q) of the biquadratic left after cancelling the trivial root:
///   q⁴ + 2(κ² − Δ0²)/η² q² + ((κ² + Δ0²)/η²)² − 4 Δ0 ε² / (K η²) = 0.
inline std::array<double, 5> quartic_coefficients(const SymmetricParams& s) {
    const double e2 = s.eta * s.eta;
    const double b = 2.0 * (s.kappa * s.kappa - s.Delta0 * s.Delta0) / e2;
    const double r = (s.kappa * s.kappa + s.Delta0 * s.Delta0) / e2;
    const double c = r * r - 4.0 * s.Delta0 * s.eps * s.eps / (s.stiffness * e2);
    return {c, 0.0, b, 0.0, 1.0};
}

struct QuarticSolution {
    std::vector<Root> q_squared;  // real, non-negative roots in y = q²
    std::vector<Root> q;          // real roots in q, ascending
};

/// Closed-form solution of the symmetric biquadratic via the quadratic formula in q².
/// A discriminant or a q² root within 1e-12 of its natural scale is snapped to zero.
inline QuarticSolution symmetric_quartic(const SymmetricParams& s) {
    const double e2 = s.eta * s.eta;
    const double b = 2.0 * (s.kappa * s.kappa - s.Delta0 * s.Delta0) / e2;
    const double r = (s.kappa * s.kappa + s.Delta0 * s.Delta0) / e2;
    const double drive = 4.0 * s.Delta0 * s.eps * s.eps / (s.stiffness * e2);
    const double c = r * r - drive;
    const double tol = 1e-12;

    QuarticSolution out;
    double disc = b * b - 4.0 * c;
    if (std::abs(disc) <= tol * (b * b + 4.0 * std::max(r * r, std::abs(drive)))) disc = 0.0;
    if (disc < 0.0) return out;

    const double y_scale = std::abs(b) + std::sqrt(std::max(r * r, std::abs(drive)));
    auto snap = [&](double y) { return std::abs(y) <= tol * y_scale ? 0.0 : y; };

    if (disc == 0.0) {
        out.q_squared.push_back({snap(-0.5 * b), 2});
    } else {
        const double sq = std::sqrt(disc);
        const double big = -0.5 * (b + std::copysign(sq, b));  // larger-magnitude root, no cancellation
        const double small = big != 0.0 ? c / big : 0.0;
        out.q_squared.push_back({snap(std::min(big, small)), 1});
        out.q_squared.push_back({snap(std::max(big, small)), 1});
    }
    std::erase_if(out.q_squared, [](const Root& y) { return y.value < 0.0; });

    for (const Root& y : out.q_squared) {
        if (y.value == 0.0) {
            out.q.push_back({0.0, 2 * y.multiplicity});
        } else {
            const double x = std::sqrt(y.value);
            out.q.push_back({-x, y.multiplicity});
            out.q.push_back({x, y.multiplicity});
        }
    }
    std::sort(out.q.begin(), out.q.end(), [](const Root& a, const Root& b) { return a.value < b.value; });
    return out;
}

inline QuarticSolution symmetric_quartic(const DerivedParams& d) { return symmetric_quartic(symmetric_params(d)); }

/// Real nontrivial equilibrium displacements of a symmetric configuration.
inline std::vector<Root> symmetric_quartic_roots(const DerivedParams& d) { return symmetric_quartic(d).q; }

enum class Regime { no_real_roots, stringent_window, inclusive };

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::no_real_roots: return "no_real_roots";
        case Regime::stringent_window: return "stringent_window";
        case Regime::inclusive: return "inclusive";
    }
    return "?";
}

struct ThresholdReport {
    bool condition_i = false;                   // discriminant in q² non-negative
    bool condition_ii_negative_branch = false;  // smaller q² root real and positive (needs κ < Δ0)
    bool condition_ii_positive_branch = false;  // larger q² root non-negative for any κ, Δ0
    bool reduced_inequality = false;            // ηε ≥ sqrt(K / 4Δ0) (κ² + Δ0²)
    Regime regime_label = Regime::no_real_roots;
};

inline ThresholdReport threshold_report(const SymmetricParams& s) {
    if (!(s.Delta0 > 0.0)) throw InvalidParameter("threshold report requires a positive detuning");
    const double k2 = s.kappa * s.kappa;
    const double d2 = s.Delta0 * s.Delta0;
    const double drive = (s.eta * s.eps) * (s.eta * s.eps);
    const double branch = s.stiffness * (k2 + d2) * (k2 + d2) / (4.0 * s.Delta0);

    ThresholdReport r;
    r.condition_i = drive >= s.stiffness * k2 * s.Delta0;
    r.condition_ii_negative_branch = r.condition_i && k2 < d2 && drive < branch;
    r.condition_ii_positive_branch = drive >= branch;
    r.reduced_inequality = s.eta * s.eps >= std::sqrt(s.stiffness / (4.0 * s.Delta0)) * (k2 + d2);
    r.regime_label = r.reduced_inequality             ? Regime::inclusive
                     : r.condition_ii_negative_branch ? Regime::stringent_window
                                                      : Regime::no_real_roots;
    return r;
}

inline ThresholdReport threshold_report(const DerivedParams& d) { return threshold_report(symmetric_params(d)); }

}  // namespace optomech
