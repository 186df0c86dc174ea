// entanglement.hpp: pairwise Gaussian entanglement: submatrices, partially transposed
// symplectic spectrum, logarithmic negativity, and onset / death-revival analysis over time.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "optomech/core_model.hpp"
#include "optomech/dynamics.hpp"

namespace optomech {

enum class PairId { ML, MR, LR };

inline constexpr std::array<PairId, 3> all_pairs{PairId::ML, PairId::MR, PairId::LR};

inline const char* to_string(PairId p) {
    switch (p) {
        case PairId::ML: return "ML";
        case PairId::MR: return "MR";
        case PairId::LR: return "LR";
    }
    return "?";
}

/// 0-based quadrature indices of the two modes of a pair.
inline constexpr std::array<std::size_t, 4> pair_indices(PairId p) {
    switch (p) {
        case PairId::ML: return {0, 1, 2, 3};
        case PairId::MR: return {0, 1, 4, 5};
        case PairId::LR: return {2, 3, 4, 5};
    }
    return {0, 0, 0, 0};
}

inline Mat4 submatrix(const CovMatrix& V, PairId pair) {
    const auto idx = pair_indices(pair);
    Mat4 s;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) s(i, j) = V(idx[i], idx[j]);
    return s;
}

/// Σ = det V_α + det V_β − 2 det V_αβ, invariant of the partially transposed state.
inline double partial_transpose_invariant(const Mat4& Vs) {
    const double da = Vs(0, 0) * Vs(1, 1) - Vs(0, 1) * Vs(1, 0);
    const double db = Vs(2, 2) * Vs(3, 3) - Vs(2, 3) * Vs(3, 2);
    const double dab = Vs(0, 2) * Vs(1, 3) - Vs(0, 3) * Vs(1, 2);
    return da + db - 2.0 * dab;
}

struct SymplecticPair {
    double v_minus = 0.0;
    double v_plus = 0.0;
};

/// v∓ = sqrt{[Σ ∓ sqrt(Σ² − 4 det Vs)] / 2}
inline SymplecticPair symplectic_eigenvalue_pt(const Mat4& Vs) {
    const double sigma = partial_transpose_invariant(Vs);
    const double det = determinant(Vs);
    double disc = sigma * sigma - 4.0 * det;
    if (disc < 0.0) {
        if (disc < -1e-10) throw NonPhysicalState("negative symplectic discriminant " + std::to_string(disc));
        disc = 0.0;
    }
    const double root = std::sqrt(disc);
    const double hi = 0.5 * (sigma + root);
    // v₋² v₊² = det Vs; this form avoids cancelling Σ against the root when v₋ ≪ v₊
    const double lo = hi > 0.0 ? det / hi : 0.5 * (sigma - root);
    if (lo < 0.0 || hi < 0.0) throw NonPhysicalState("negative symplectic bracket");
    return {std::sqrt(lo), std::sqrt(hi)};
}

/// E_N = max(0, −ln(2 v₋)); vacuum variance is 1/2.
inline double log_negativity(double v_minus) {
    if (!(v_minus > 0.0)) throw InvalidParameter("log_negativity requires v_minus > 0");
    return std::max(0.0, -std::log(2.0 * v_minus));
}

/// 4 det Vs < Σ(Vs) − 1/4
inline bool entangled_by_inequality(const Mat4& Vs) {
    return 4.0 * determinant(Vs) < partial_transpose_invariant(Vs) - 0.25;
}

struct NegativitySeries {
    PairId pair = PairId::ML;
    std::vector<double> times;
    std::vector<double> v_minus;
    std::vector<double> E_N;
    std::vector<bool> nonphysical;  // sample flagged; E_N clamped to 0

    std::size_t size() const { return times.size(); }
    std::size_t nonphysical_count() const { return static_cast<std::size_t>(std::count(nonphysical.begin(), nonphysical.end(), true)); }
};

inline NegativitySeries negativity_series(std::span<const TrajectorySample> samples, PairId pair) {
    if (samples.empty()) throw InvalidParameter("negativity_series: no samples");
    NegativitySeries s;
    s.pair = pair;
    s.times.reserve(samples.size());
    s.v_minus.reserve(samples.size());
    s.E_N.reserve(samples.size());
    s.nonphysical.reserve(samples.size());

    for (const auto& smp : samples) {
        s.times.push_back(smp.t);
        double vm = std::numeric_limits<double>::quiet_NaN();
        double en = 0.0;
        bool bad = false;
        try {
            vm = symplectic_eigenvalue_pt(submatrix(smp.cov, pair)).v_minus;
            if (vm > 0.0)
                en = log_negativity(vm);
            else
                bad = true;
        } catch (const NonPhysicalState&) {
            bad = true;
        }
        s.v_minus.push_back(vm);
        s.E_N.push_back(en);
        s.nonphysical.push_back(bad);
    }
    if (s.nonphysical_count() == s.size())
        throw NonPhysicalState(std::string("every sample of pair ") + to_string(pair) + " is non-physical");
    return s;
}

// ---------------------------------------------------------------------------------------------
// transfer analysis
// ---------------------------------------------------------------------------------------------

enum class TransferPattern { never_entangled, saturating, death_revival, sudden_death };

inline const char* to_string(TransferPattern p) {
    switch (p) {
        case TransferPattern::never_entangled: return "never_entangled";
        case TransferPattern::saturating: return "saturating";
        case TransferPattern::death_revival: return "death_revival";
        case TransferPattern::sudden_death: return "sudden_death";
    }
    return "?";
}

struct TransferOptions {
    double eps_on = 1e-4;
    double hold_window = 0.0;  // s
    double envelope_period = 0.0;  // s
};

/// eps_on = 1e-4, envelope period 2π/Ω_M, hold window = `hold_periods` envelope periods.
inline TransferOptions default_transfer_options(const DerivedParams& d, double eps_on = 1e-4, double hold_periods = 10.0) {
    const double period = 2.0 * constants::pi / d.omega_M;
    return {eps_on, hold_periods * period, period};
}

struct TransferReport {
    PairId pair = PairId::ML;
    std::optional<double> onset_time;
    std::optional<double> saturation_value;
    TransferPattern pattern = TransferPattern::never_entangled;
    std::size_t zero_interval_count = 0;
    bool insufficient_horizon = false;
};

/// Forward running maximum: env[i] = max{ values[j] : times[i] <= times[j] < times[i] + period }.
inline std::vector<double> forward_envelope(std::span<const double> times, std::span<const double> values, double period) {
    const std::size_t n = times.size();
    std::vector<double> env(n);
    std::deque<std::size_t> window;  // indices, values decreasing from front to back
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (next < n && times[next] < times[i] + period) {
            while (!window.empty() && values[window.back()] <= values[next]) window.pop_back();
            window.push_back(next++);
        }
        while (window.front() < i) window.pop_front();
        env[i] = values[window.front()];
    }
    return env;
}

/// Onset: first sample above eps_on whose envelope stays above eps_on for the whole hold window.
/// After onset the envelope (restricted to samples whose envelope window lies inside the series)
/// is scanned for returns to <= eps_on; a return followed by a revival counts as a zero interval.
inline TransferReport transfer_report(const NegativitySeries& s, const TransferOptions& opt) {
    if (!(opt.eps_on > 0.0)) throw InvalidParameter("transfer_report: eps_on must be > 0");
    if (!(opt.hold_window > 0.0)) throw InvalidParameter("transfer_report: hold_window must be > 0");
    if (!(opt.envelope_period > 0.0)) throw InvalidParameter("transfer_report: envelope_period must be > 0");

    TransferReport r;
    r.pair = s.pair;
    const std::size_t n = s.size();
    if (n == 0) return r;
    const double eps = opt.eps_on;
    const double t_last = s.times.back();
    const std::vector<double> env = forward_envelope(s.times, s.E_N, opt.envelope_period);

    // first index >= i where the envelope drops to eps or below
    std::vector<std::size_t> next_low(n + 1, n);
    for (std::size_t i = n; i-- > 0;) next_low[i] = env[i] <= eps ? i : next_low[i + 1];

    std::optional<std::size_t> onset;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(s.E_N[i] > eps)) continue;
        if (t_last - s.times[i] < opt.hold_window) {
            r.insufficient_horizon = true;
            break;
        }
        const std::size_t low = next_low[i];
        if (low == n || s.times[low] > s.times[i] + opt.hold_window) {
            onset = i;
            break;
        }
    }
    if (!onset) return r;
    r.onset_time = s.times[*onset];

    bool dead = false;
    for (std::size_t j = *onset; j < n; ++j) {
        const bool full_window = s.times[j] + opt.envelope_period <= t_last;
        if (!dead) {
            if (full_window && env[j] <= eps) dead = true;
        } else if (s.E_N[j] > eps) {
            dead = false;
            ++r.zero_interval_count;
        }
    }

    if (r.zero_interval_count > 0) {
        r.pattern = TransferPattern::death_revival;
    } else if (dead) {
        r.pattern = TransferPattern::sudden_death;
    } else {
        r.pattern = TransferPattern::saturating;
        const std::size_t tail = n - std::max<std::size_t>(1, n / 10);
        double sum = 0.0;
        for (std::size_t j = tail; j < n; ++j) sum += env[j];
        r.saturation_value = sum / static_cast<double>(n - tail);
    }
    return r;
}

}  // namespace optomech
