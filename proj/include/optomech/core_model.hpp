// core_model.hpp: physical inputs, derived rates, and the drift / diffusion matrices
// of the linearised double-cavity optomechanical system.
//
// Units: every rate in DerivedParams is angular (rad/s). Mechanical quadratures are
// dimensionless (scaled by the zero-point length / momentum), cavity amplitudes are
// dimensionless photon amplitudes, and quadratures follow X = (a + a†)/√2, Y = (a − a†)/(i√2),
// so a vacuum quadrature has variance 1/2.
//
// Quadrature order everywhere: (q, p, X_L, Y_L, X_R, Y_R).

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "optomech/errors.hpp"
#include "optomech/matrix.hpp"

namespace optomech {

namespace constants {
inline constexpr double speed_of_light = 2.99792458e8;  // m/s
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double boltzmann = 1.380649e-23;       // J/K
inline constexpr double pi = std::numbers::pi;
}  // namespace constants

/// How numeric frequency inputs (mechanical frequency, detunings) are read.
/// `ordinary` inputs are in Hz and get multiplied by 2π; `angular` inputs are rad/s.
enum class FrequencyConvention { ordinary, angular };

struct CavityParams {
    double length = 0.0;          // m
    double finesse = 0.0;
    double wavelength = 0.0;      // m, cavity-mode wavelength
    double drive_power = 0.0;     // W
    double drive_detuning = 0.0;  // cavity minus laser frequency, read per FrequencyConvention
};

struct MechanicalParams {
    double mass = 0.0;              // kg
    double frequency = 0.0;         // read per FrequencyConvention
    double quality_factor = 0.0;
    double bath_temperature = 0.0;  // K
};

struct PhysicalParams {
    CavityParams left;
    CavityParams right;
    MechanicalParams mechanical;
    FrequencyConvention frequency_convention = FrequencyConvention::ordinary;
};

struct DerivedParams {
    double kappa_L = 0.0, kappa_R = 0.0;    // amplitude decay rates
    double eps_L = 0.0, eps_R = 0.0;        // drive strengths (real, phase reference)
    double g0_L = 0.0, g0_R = 0.0;          // single-photon optomechanical coupling
    double omega_M = 0.0;                   // mechanical frequency
    double Gamma_M = 0.0;                   // mechanical damping
    double nbar = 0.0;                      // bath occupation
    double Delta0_L = 0.0, Delta0_R = 0.0;  // static detunings

    /// Radiation-pressure coefficient entering the force and the dynamic detuning (√2 g0).
    double eta_L() const { return std::numbers::sqrt2 * g0_L; }
    double eta_R() const { return std::numbers::sqrt2 * g0_R; }
};

struct MeanState {
    double q = 0.0;
    double p = 0.0;
    std::complex<double> alpha_L{};
    std::complex<double> alpha_R{};

    bool finite() const {
        return std::isfinite(q) && std::isfinite(p) && std::isfinite(alpha_L.real()) &&
               std::isfinite(alpha_L.imag()) && std::isfinite(alpha_R.real()) &&
               std::isfinite(alpha_R.imag());
    }

    friend bool operator==(const MeanState&, const MeanState&) = default;
};

/// Symmetric 6x6 covariance of the quadrature fluctuations. Construction symmetrizes.
class CovMatrix {
public:
    CovMatrix() = default;
    explicit CovMatrix(const Mat6& m) : m_(symmetrized(m)) {}

    static CovMatrix diagonal(const std::array<double, 6>& d) { return CovMatrix(Mat6::diagonal(d)); }

    /// Mechanical thermal state with occupation nbar, both cavities in vacuum.
    static CovMatrix thermal(double nbar) {
        const double vm = (2.0 * nbar + 1.0) / 2.0;
        return diagonal({vm, vm, 0.5, 0.5, 0.5, 0.5});
    }

    const Mat6& matrix() const { return m_; }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    bool diagonal_nonnegative() const {
        for (std::size_t i = 0; i < 6; ++i)
            if (m_(i, i) < 0.0) return false;
        return true;
    }

    friend bool operator==(const CovMatrix&, const CovMatrix&) = default;

private:
    Mat6 m_{};
};

inline const char* to_string(FrequencyConvention c) {
    return c == FrequencyConvention::ordinary ? "ordinary" : "angular";
}

inline void validate(const CavityParams& c, const std::string& side) {
    if (!(c.length > 0.0)) throw InvalidParameter(side + " cavity length must be > 0");
    if (!(c.finesse > 0.0)) throw InvalidParameter(side + " cavity finesse must be > 0");
    if (!(c.wavelength > 0.0)) throw InvalidParameter(side + " cavity wavelength must be > 0");
    if (!(c.drive_power >= 0.0)) throw InvalidParameter(side + " drive power must be >= 0");
    if (!std::isfinite(c.drive_detuning)) throw InvalidParameter(side + " detuning must be finite");
}

inline void validate(const MechanicalParams& m) {
    if (!(m.mass > 0.0)) throw InvalidParameter("mechanical mass must be > 0");
    if (!(m.frequency > 0.0)) throw InvalidParameter("mechanical frequency must be > 0");
    if (!(m.quality_factor > 0.0)) throw InvalidParameter("mechanical quality factor must be > 0");
    if (!(m.bath_temperature >= 0.0)) throw InvalidParameter("bath temperature must be >= 0");
}

inline void validate(const PhysicalParams& p) {
    validate(p.left, "left");
    validate(p.right, "right");
    validate(p.mechanical);
}

/// Bose occupation of a mode at angular frequency `omega` (exactly 0 at T = 0).
inline double thermal_occupation(double omega, double temperature) {
    if (temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(constants::hbar * omega / (constants::boltzmann * temperature));
}

/// κ = πc / (2Fℓ)
inline double cavity_decay_rate(const CavityParams& c) {
    return constants::pi * constants::speed_of_light / (2.0 * c.finesse * c.length);
}

inline DerivedParams derive_params(const PhysicalParams& p) {
    using namespace constants;
    validate(p);

    const double to_angular = p.frequency_convention == FrequencyConvention::ordinary ? 2.0 * pi : 1.0;
    const auto& mech = p.mechanical;

    DerivedParams d;
    d.omega_M = to_angular * mech.frequency;
    d.Gamma_M = d.omega_M / mech.quality_factor;
    d.nbar = thermal_occupation(d.omega_M, mech.bath_temperature);

    const double zero_point = std::sqrt(hbar / (2.0 * mech.mass * d.omega_M));
    auto side = [&](const CavityParams& c, double& kappa, double& eps, double& g0, double& delta0) {
        const double omega_cav = 2.0 * pi * speed_of_light / c.wavelength;
        kappa = cavity_decay_rate(c);
        delta0 = to_angular * c.drive_detuning;
        const double omega_drive = omega_cav - delta0;
        eps = std::sqrt(2.0 * kappa * c.drive_power / (hbar * omega_drive));
        g0 = omega_cav / c.length * zero_point;
    };
    side(p.left, d.kappa_L, d.eps_L, d.g0_L, d.Delta0_L);
    side(p.right, d.kappa_R, d.eps_R, d.g0_R, d.Delta0_R);
    return d;
}

/// Linearised coupling G_σ = √2·η_σ·α_σ = 2·g0_σ·α_σ (Jacobian of the radiation-pressure terms).
inline std::complex<double> coupling_L(const DerivedParams& d, const MeanState& s) { return 2.0 * d.g0_L * s.alpha_L; }
inline std::complex<double> coupling_R(const DerivedParams& d, const MeanState& s) { return 2.0 * d.g0_R * s.alpha_R; }

/// Dynamic detunings: the left cavity shifts with +q, the right with −q.
inline double dynamic_detuning_L(const DerivedParams& d, double q) { return d.Delta0_L + d.eta_L() * q; }
inline double dynamic_detuning_R(const DerivedParams& d, double q) { return d.Delta0_R - d.eta_R() * q; }

/// Drift matrix A(t) of the fluctuation dynamics u̇ = A u + n, evaluated at the mean state `s`.
/// Equals the Jacobian of mean_field_rhs in quadrature coordinates.
inline Mat6 drift_matrix(const DerivedParams& d, const MeanState& s) {
    const auto GL = coupling_L(d, s);
    const auto GR = coupling_R(d, s);
    const double DL = dynamic_detuning_L(d, s.q);
    const double DR = dynamic_detuning_R(d, s.q);

    Mat6 A{};
    A(0, 1) = d.omega_M;

    A(1, 0) = -d.omega_M;
    A(1, 1) = -d.Gamma_M;
    A(1, 2) = -GL.real();
    A(1, 3) = -GL.imag();
    A(1, 4) = GR.real();
    A(1, 5) = GR.imag();

    A(2, 0) = GL.imag();
    A(2, 2) = -d.kappa_L;
    A(2, 3) = DL;
    A(3, 0) = -GL.real();
    A(3, 2) = -DL;
    A(3, 3) = -d.kappa_L;

    A(4, 0) = -GR.imag();
    A(4, 4) = -d.kappa_R;
    A(4, 5) = DR;
    A(5, 0) = GR.real();
    A(5, 4) = -DR;
    A(5, 5) = -d.kappa_R;
    return A;
}

/// D = diag(0, Γ_M(2n̄+1), κ_L, κ_L, κ_R, κ_R)
inline Mat6 diffusion_matrix(const DerivedParams& d) {
    return Mat6::diagonal({0.0, d.Gamma_M * (2.0 * d.nbar + 1.0), d.kappa_L, d.kappa_L, d.kappa_R, d.kappa_R});
}

/// Mirror image: swap the cavities. Together with q → −q, p → −p this maps solutions onto solutions.
inline DerivedParams mirrored(const DerivedParams& d) {
    DerivedParams m = d;
    std::swap(m.kappa_L, m.kappa_R);
    std::swap(m.eps_L, m.eps_R);
    std::swap(m.g0_L, m.g0_R);
    std::swap(m.Delta0_L, m.Delta0_R);
    return m;
}

inline MeanState mirrored(const MeanState& s) { return {-s.q, -s.p, s.alpha_R, s.alpha_L}; }

}  // namespace optomech
