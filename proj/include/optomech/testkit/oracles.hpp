// oracles.hpp: brute-force reference implementations used to check the main path.
// None of these reuse the production kernels: eigenvalue questions go through Eigen,
// root questions through dense sign scans, sums through plain loops.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "optomech/core_model.hpp"
#include "optomech/testkit/rng.hpp"

namespace optomech::testkit {

template <std::size_t N>
Eigen::Matrix<double, int(N), int(N)> to_eigen(const Matrix<N>& m) {
    Eigen::Matrix<double, int(N), int(N)> e;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) e(int(i), int(j)) = m(i, j);
    return e;
}

template <std::size_t N>
Matrix<N> from_eigen(const Eigen::Matrix<double, int(N), int(N)>& e) {
    Matrix<N> m;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) m(i, j) = e(int(i), int(j));
    return m;
}

// ---------------------------------------------------------------------------------------------
// polynomials
// ---------------------------------------------------------------------------------------------

/// Evaluates the polynomial (ascending coefficients) at n+1 uniform points on [lo, hi] and
/// bisects every sign change to 1e-12. Tangential roots are missed by design.
inline std::vector<double> poly_real_roots_scan(const std::vector<double>& coeffs, double lo, double hi,
                                                std::size_t n) {
    if (n < 1000 || !(lo < hi)) throw InvalidParameter("poly_real_roots_scan: need n >= 1000 and lo < hi");
    auto f = [&](double x) {
        double acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
        return acc;
    };

    std::vector<double> roots;
    double xa = lo, fa = f(lo);
    if (fa == 0.0) roots.push_back(lo);
    for (std::size_t i = 1; i <= n; ++i) {
        const double xb = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
        const double fb = f(xb);
        if (fb == 0.0) {
            roots.push_back(xb);
        } else if (fa != 0.0 && (fa < 0.0) != (fb < 0.0)) {
            double a = xa, b = xb, fl = fa;
            while (b - a > 1e-12 * std::max(1.0, std::abs(a))) {
                const double m = 0.5 * (a + b);
                if (m <= a || m >= b) break;
                const double fm = f(m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if ((fm < 0.0) == (fl < 0.0)) {
                    a = m;
                    fl = fm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        xa = xb;
        fa = fb;
    }
    return roots;
}

// ---------------------------------------------------------------------------------------------
// spectra
// ---------------------------------------------------------------------------------------------

inline std::vector<std::complex<double>> eigenvalues(const Mat6& A) {
    Eigen::EigenSolver<Eigen::Matrix<double, 6, 6>> es(to_eigen(A), false);
    std::vector<std::complex<double>> ev;
    for (int i = 0; i < 6; ++i) ev.push_back(es.eigenvalues()(i));
    return ev;
}

inline double max_real_eigenvalue(const Mat6& A) {
    double m = -std::numeric_limits<double>::infinity();
    for (auto ev : eigenvalues(A)) m = std::max(m, ev.real());
    return m;
}

struct SymplecticSpectrum {
    double v_minus = 0.0;
    double v_plus = 0.0;
};

/// |eigenvalues| of iΩV^PT, Ω = ⊕[[0,1],[−1,0]], PT flipping the momentum of the second mode.
inline SymplecticSpectrum symplectic_spectrum_pt(const Mat4& Vs) {
    Eigen::Matrix4d P = Eigen::Matrix4d::Identity();
    P(3, 3) = -1.0;
    Eigen::Matrix4d Om = Eigen::Matrix4d::Zero();
    Om(0, 1) = Om(2, 3) = 1.0;
    Om(1, 0) = Om(3, 2) = -1.0;
    const Eigen::Matrix4cd M = std::complex<double>(0.0, 1.0) * (Om * P * to_eigen(Vs) * P).cast<std::complex<double>>();
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(M, false);
    std::vector<double> mags;
    for (int i = 0; i < 4; ++i) mags.push_back(std::abs(es.eigenvalues()(i)));
    std::sort(mags.begin(), mags.end());
    return {0.5 * (mags[0] + mags[1]), 0.5 * (mags[2] + mags[3])};
}

// ---------------------------------------------------------------------------------------------
// Lyapunov
// ---------------------------------------------------------------------------------------------

/// Solves A V + V Aᵀ + D = 0 through the 36×36 Kronecker system
/// (A⊗I + I⊗A) vec(V) = −vec(D), LU with partial pivoting.
inline Mat6 lyapunov_solve_algebraic(const Mat6& A, const Mat6& D) {
    if (!(max_real_eigenvalue(A) < 0.0)) throw InvalidParameter("lyapunov_solve_algebraic: A is not stable");
    const Eigen::Matrix<double, 6, 6> a = to_eigen(A);
    const Eigen::Matrix<double, 6, 6> I = Eigen::Matrix<double, 6, 6>::Identity();
    Eigen::Matrix<double, 36, 36> K = Eigen::Matrix<double, 36, 36>::Zero();
    // vec stacks columns: vec(AV) = (I⊗A) vec V, vec(VAᵀ) = (A⊗I) vec V
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            K.block<6, 6>(6 * i, 6 * j) += a(i, j) * I;
            if (i == j) K.block<6, 6>(6 * i, 6 * j) += a;
        }
    Eigen::Matrix<double, 36, 1> rhs;
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 6; ++i) rhs(6 * j + i) = -D(std::size_t(i), std::size_t(j));
    const Eigen::Matrix<double, 36, 1> v = K.partialPivLu().solve(rhs);
    Mat6 V;
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 6; ++i) V(std::size_t(i), std::size_t(j)) = v(6 * j + i);
    return symmetrized(V);
}

// ---------------------------------------------------------------------------------------------
// dynamics
// ---------------------------------------------------------------------------------------------

/// Σ_k (A_ik V_kj + V_ik A_jk) + D_ij, one term at a time.
inline Mat6 covariance_rhs_naive(const Mat6& A, const Mat6& V, const Mat6& D) {
    Mat6 out;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            double s = D(i, j);
            for (std::size_t k = 0; k < 6; ++k) s += A(i, k) * V(k, j) + V(i, k) * A(j, k);
            out(i, j) = s;
        }
    return out;
}

/// Central-difference Jacobian of a map on (q, p, Re α_L, Im α_L, Re α_R, Im α_R).
inline Mat6 finite_difference_jacobian(const std::function<MeanState(const MeanState&)>& f, const MeanState& s,
                                       double rel_step = 1e-6) {
    auto to_vec = [](const MeanState& m) {
        return std::array<double, 6>{m.q, m.p, m.alpha_L.real(), m.alpha_L.imag(), m.alpha_R.real(), m.alpha_R.imag()};
    };
    auto from_vec = [](const std::array<double, 6>& v) {
        return MeanState{v[0], v[1], {v[2], v[3]}, {v[4], v[5]}};
    };
    const auto x = to_vec(s);
    Mat6 J;
    for (std::size_t k = 0; k < 6; ++k) {
        const double h = rel_step * std::max(1.0, std::abs(x[k]));
        auto xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        const auto fp = to_vec(f(from_vec(xp)));
        const auto fm = to_vec(f(from_vec(xm)));
        for (std::size_t i = 0; i < 6; ++i) J(i, k) = (fp[i] - fm[i]) / (2.0 * h);
    }
    return J;
}

/// Driven damped cavity from rest: α(t) = ε/(κ + iΔ) (1 − e^{−(κ+iΔ)t}).
inline std::complex<double> driven_cavity_amplitude(double kappa, double delta, double eps, double t) {
    const std::complex<double> z(kappa, delta);
    // e^{x+iy} − 1 without cancellation for small t
    const double x = -kappa * t, y = -delta * t;
    const double s = std::sin(0.5 * y);
    const std::complex<double> em1(std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y));
    return -eps / z * em1;
}

// ---------------------------------------------------------------------------------------------
// random test matrices
// ---------------------------------------------------------------------------------------------

namespace detail {

inline Eigen::Matrix4d rotation(int mode, double theta) {
    Eigen::Matrix4d S = Eigen::Matrix4d::Identity();
    const int o = 2 * mode;
    S(o, o) = std::cos(theta);
    S(o, o + 1) = std::sin(theta);
    S(o + 1, o) = -std::sin(theta);
    S(o + 1, o + 1) = std::cos(theta);
    return S;
}

inline Eigen::Matrix4d squeezer(int mode, double r) {
    Eigen::Matrix4d S = Eigen::Matrix4d::Identity();
    S(2 * mode, 2 * mode) = std::exp(-r);
    S(2 * mode + 1, 2 * mode + 1) = std::exp(r);
    return S;
}

inline Eigen::Matrix4d beam_splitter(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    Eigen::Matrix4d S = Eigen::Matrix4d::Zero();
    S(0, 0) = S(1, 1) = S(2, 2) = S(3, 3) = c;
    S(0, 2) = S(1, 3) = s;
    S(2, 0) = S(3, 1) = -s;
    return S;
}

inline Eigen::Matrix4d two_mode_squeezer(double r) {
    const double c = std::cosh(r), s = std::sinh(r);
    Eigen::Matrix4d S = Eigen::Matrix4d::Zero();
    S(0, 0) = S(1, 1) = S(2, 2) = S(3, 3) = c;
    S(0, 2) = S(2, 0) = s;
    S(1, 3) = S(3, 1) = -s;
    return S;
}

}  // namespace detail

/// Random symplectic 4×4 (quadrature order x1, p1, x2, p2) built from elementary Gaussian gates.
inline Eigen::Matrix4d random_symplectic(Rng& rng, double max_squeeze = 0.5, int layers = 2) {
    Eigen::Matrix4d S = Eigen::Matrix4d::Identity();
    for (int layer = 0; layer < layers; ++layer) {
        S = detail::rotation(0, rng.uniform(0.0, 2.0 * std::numbers::pi)) * S;
        S = detail::rotation(1, rng.uniform(0.0, 2.0 * std::numbers::pi)) * S;
        S = detail::squeezer(0, rng.uniform(-max_squeeze, max_squeeze)) * S;
        S = detail::squeezer(1, rng.uniform(-max_squeeze, max_squeeze)) * S;
        S = detail::beam_splitter(rng.uniform(0.0, std::numbers::pi)) * S;
        S = detail::two_mode_squeezer(rng.uniform(-max_squeeze, max_squeeze)) * S;
    }
    return S;
}

/// Random physical two-mode covariance (vacuum variance 1/2): S diag(ν1,ν1,ν2,ν2) Sᵀ with ν ≥ 1/2.
/// The default squeezing budget reaches E_N ≈ 1.5 with entries up to ~25; much stronger
/// squeezing makes the spectrum ill-conditioned for any double-precision method.
inline Mat4 random_physical_covariance(Rng& rng, double max_squeeze = 0.5, double max_thermal = 2.0, int layers = 2) {
    const double n1 = 0.5 + rng.uniform(0.0, max_thermal);
    const double n2 = 0.5 + rng.uniform(0.0, max_thermal);
    const Eigen::Matrix4d S = random_symplectic(rng, max_squeeze, layers);
    const Eigen::Matrix4d V = S * Eigen::Vector4d(n1, n1, n2, n2).asDiagonal() * S.transpose();
    return symmetrized(from_eigen<4>(V));
}

/// Random stable matrix −(QQᵀ + cI) + (S − Sᵀ).
inline Mat6 random_stable_matrix(Rng& rng, double shift = 0.1) {
    Mat6 Q, S;
    for (auto& v : Q.data) v = rng.normal();
    for (auto& v : S.data) v = rng.normal();
    Mat6 A = (-1.0) * (Q * transpose(Q) + shift * Mat6::identity()) + (S - transpose(S));
    return A;
}

}  // namespace optomech::testkit
