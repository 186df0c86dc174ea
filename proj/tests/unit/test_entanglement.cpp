#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "helpers.hpp"
#include "optomech/dynamics.hpp"
#include "optomech/entanglement.hpp"
#include "optomech/testkit/oracles.hpp"

using namespace optomech;

namespace {

Mat4 two_mode_squeezed(double r) {
    const double c = 0.5 * std::cosh(2.0 * r), s = 0.5 * std::sinh(2.0 * r);
    Mat4 v = Mat4::diagonal({c, c, c, c});
    v(0, 2) = v(2, 0) = s;
    v(1, 3) = v(3, 1) = -s;
    return v;
}

NegativitySeries synthetic(const std::function<double(double)>& f, double t_end = 400e-6, double dt = 0.1e-6) {
    NegativitySeries s;
    for (std::size_t k = 0; double(k) * dt <= t_end * (1.0 + 1e-12); ++k) {
        const double t = double(k) * dt;
        s.times.push_back(t);
        s.E_N.push_back(f(t));
        s.v_minus.push_back(0.5 * std::exp(-s.E_N.back()));
        s.nonphysical.push_back(false);
    }
    return s;
}

// Ω = 1e6 rad/s: envelope period 6.28 μs, hold window 62.8 μs
TransferOptions synthetic_options() {
    DerivedParams d;
    d.omega_M = 1e6;
    return default_transfer_options(d);
}

double ramp(double t, double t0, double tau) { return t <= t0 ? 0.0 : 1.0 - std::exp(-(t - t0) / tau); }

}  // namespace

TEST(Submatrix, IdentityAndIndexing) {
    const CovMatrix I(Mat6::identity());
    for (PairId p : all_pairs) EXPECT_EQ(submatrix(I, p), Mat4::identity());

    testkit::Rng rng(testkit::RngSeed{3});
    Mat6 m;
    for (double& x : m.data) x = rng.uniform(-1.0, 1.0);
    const CovMatrix V(m);
    for (PairId p : all_pairs) {
        const auto idx = pair_indices(p);
        const Mat4 s = submatrix(V, p);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(s(i, j), V(idx[i], idx[j]));
    }
}

TEST(Submatrix, OnlyIntercavityBlock) {
    Mat6 m = Mat6::identity();
    m(2, 4) = m(4, 2) = 0.3;
    m(3, 5) = m(5, 3) = -0.2;
    const CovMatrix V(m);
    const Mat4 ml = submatrix(V, PairId::ML), mr = submatrix(V, PairId::MR), lr = submatrix(V, PairId::LR);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 2; j < 4; ++j) {
            EXPECT_EQ(ml(i, j), 0.0);
            EXPECT_EQ(mr(i, j), 0.0);
        }
    EXPECT_EQ(lr(0, 2), 0.3);
    EXPECT_EQ(lr(1, 3), -0.2);
}

TEST(Symplectic, VacuumIsSeparable) {
    const Mat4 v = 0.5 * Mat4::identity();
    EXPECT_EQ(partial_transpose_invariant(v), 0.5);
    EXPECT_EQ(determinant(v), 1.0 / 16.0);
    const auto sp = symplectic_eigenvalue_pt(v);
    EXPECT_EQ(sp.v_minus, 0.5);
    EXPECT_EQ(sp.v_plus, 0.5);
    EXPECT_EQ(log_negativity(sp.v_minus), 0.0);
    EXPECT_FALSE(entangled_by_inequality(v));
}

TEST(Symplectic, TwoModeSqueezedState) {
    const auto sp = symplectic_eigenvalue_pt(two_mode_squeezed(0.5));
    EXPECT_NEAR(sp.v_minus, std::exp(-1.0) / 2.0, 1e-12);
    EXPECT_NEAR(sp.v_minus, 0.18394, 1e-5);
    EXPECT_NEAR(sp.v_plus, std::exp(1.0) / 2.0, 1e-12);
    EXPECT_NEAR(log_negativity(sp.v_minus), 1.0, 1e-9);
    EXPECT_TRUE(entangled_by_inequality(two_mode_squeezed(0.5)));
}

TEST(Symplectic, MatchesSpectralOracleOnRandomStates) {
    testkit::Rng rng(testkit::RngSeed{20240601});
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const Mat4 v = testkit::random_physical_covariance(rng);
        const auto a = symplectic_eigenvalue_pt(v);
        const auto b = testkit::symplectic_spectrum_pt(v);
        worst = std::max({worst, test::rel_err(a.v_minus, b.v_minus), test::rel_err(a.v_plus, b.v_plus)});
        EXPECT_EQ(entangled_by_inequality(v), a.v_minus < 0.5) << "sample " << k;
    }
    EXPECT_LT(worst, 1e-10);
}

TEST(Symplectic, NonPhysicalInputIsRejected) {
    Mat4 v = two_mode_squeezed(0.5);
    v(1, 3) = v(3, 1) = 5.0;  // not positive definite
    EXPECT_THROW(symplectic_eigenvalue_pt(v), NonPhysicalState);
}

TEST(LogNegativity, Examples) {
    EXPECT_EQ(log_negativity(0.5), 0.0);
    EXPECT_EQ(log_negativity(2.0), 0.0);
    EXPECT_NEAR(log_negativity(1.0 / (2.0 * std::exp(1.0))), 1.0, 1e-15);
    EXPECT_NEAR(log_negativity(0.18394), 1.0, 1e-4);
    EXPECT_THROW(log_negativity(0.0), InvalidParameter);
    double prev = log_negativity(1e-3);
    for (double v = 2e-3; v < 0.5; v += 1e-3) {
        const double e = log_negativity(v);
        EXPECT_LT(e, prev);
        prev = e;
    }
}

TEST(NegativitySeries, VacuumAndUndrivenRunsAreSeparable) {
    std::vector<TrajectorySample> vac(5);
    for (std::size_t k = 0; k < vac.size(); ++k) vac[k] = {double(k), {}, CovMatrix::thermal(0.0)};
    for (PairId p : all_pairs)
        for (double e : negativity_series(vac, p).E_N) EXPECT_EQ(e, 0.0);

    DerivedParams d = derive_params(test::fig2_params());
    d.eps_L = d.eps_R = 0.0;
    d.nbar = 2.0;
    const auto traj = integrate(d, default_trajectory(d, 5e-6, 0.0, 20));
    for (PairId p : all_pairs) {
        const auto s = negativity_series(traj, p);
        EXPECT_EQ(s.nonphysical_count(), 0u);
        for (double e : s.E_N) EXPECT_EQ(e, 0.0);
    }
}

TEST(NegativitySeries, FlagsNonPhysicalSamples) {
    Mat6 bad = Mat6::identity();
    bad(2, 4) = bad(4, 2) = 5.0;
    std::vector<TrajectorySample> s{{0.0, {}, CovMatrix::thermal(0.0)}, {1.0, {}, CovMatrix(bad)}};
    const auto ser = negativity_series(s, PairId::LR);
    EXPECT_EQ(ser.nonphysical_count(), 1u);
    EXPECT_TRUE(ser.nonphysical[1]);
    EXPECT_EQ(ser.E_N[1], 0.0);
    EXPECT_TRUE(std::isnan(ser.v_minus[1]));
    std::vector<TrajectorySample> all_bad{{0.0, {}, CovMatrix(bad)}};
    EXPECT_THROW(negativity_series(all_bad, PairId::LR), NonPhysicalState);
}

TEST(NegativitySeries, MirrorSwapsMechanicalPairs) {
    const DerivedParams d = derive_params(test::fig2_params(0.019));
    const TrajectoryConfig cfg = default_trajectory(d, 3e-6, 0.0, 10);
    const auto a = integrate(d, cfg);
    const auto b = integrate(mirrored(d), cfg);
    auto close = [](const NegativitySeries& x, const NegativitySeries& y) {
        ASSERT_EQ(x.size(), y.size());
        for (std::size_t k = 0; k < x.size(); ++k) {
            EXPECT_EQ(x.times[k], y.times[k]);
            EXPECT_NEAR(x.v_minus[k], y.v_minus[k], 1e-12 * x.v_minus[k]);
            EXPECT_NEAR(x.E_N[k], y.E_N[k], 1e-12);
        }
    };
    close(negativity_series(a, PairId::ML), negativity_series(b, PairId::MR));
    close(negativity_series(a, PairId::MR), negativity_series(b, PairId::ML));
    close(negativity_series(a, PairId::LR), negativity_series(b, PairId::LR));
}

TEST(ForwardEnvelope, RunningMaximum) {
    const std::vector<double> t{0, 1, 2, 3, 4, 5};
    const std::vector<double> v{1, 3, 2, 0, 0, 4};
    const auto env = forward_envelope(t, v, 2.0);
    EXPECT_EQ(env, (std::vector<double>{3, 3, 2, 0, 4, 4}));
}

TEST(Transfer, NeverEntangled) {
    const auto r = transfer_report(synthetic([](double) { return 0.0; }), synthetic_options());
    EXPECT_EQ(r.pattern, TransferPattern::never_entangled);
    EXPECT_FALSE(r.onset_time);
    EXPECT_FALSE(r.insufficient_horizon);
}

TEST(Transfer, OnsetAt89MicrosecondsThenSaturation) {
    const auto r = transfer_report(synthetic([](double t) { return 0.01 * ramp(t, 89e-6, 20e-6); }), synthetic_options());
    ASSERT_TRUE(r.onset_time);
    EXPECT_NEAR(*r.onset_time, 89e-6, 0.5e-6);
    EXPECT_EQ(r.pattern, TransferPattern::saturating);
    EXPECT_EQ(r.zero_interval_count, 0u);
    ASSERT_TRUE(r.saturation_value);
    EXPECT_NEAR(*r.saturation_value, 0.01, 1e-4);
}

TEST(Transfer, OscillatingBuildUpSaturates) {
    const auto r = transfer_report(
        synthetic([](double t) { return 0.01 * ramp(t, 50e-6, 20e-6) * std::pow(std::sin(0.7e6 * t), 2); }),
        synthetic_options());
    ASSERT_TRUE(r.onset_time);
    EXPECT_EQ(r.pattern, TransferPattern::saturating);
}

TEST(Transfer, DeathAndRevival) {
    auto f = [](double t) {
        if (t < 150e-6) return 0.01 * ramp(t, 50e-6, 10e-6) * (t > 120e-6 ? (150e-6 - t) / 30e-6 : 1.0);
        return 0.01 * ramp(t, 200e-6, 10e-6);
    };
    const auto r = transfer_report(synthetic(f), synthetic_options());
    ASSERT_TRUE(r.onset_time);
    EXPECT_EQ(r.pattern, TransferPattern::death_revival);
    EXPECT_EQ(r.zero_interval_count, 1u);
}

TEST(Transfer, SuddenDeath) {
    auto f = [](double t) { return t < 200e-6 ? 0.01 * ramp(t, 50e-6, 10e-6) : 0.0; };
    const auto r = transfer_report(synthetic(f), synthetic_options());
    ASSERT_TRUE(r.onset_time);
    EXPECT_EQ(r.pattern, TransferPattern::sudden_death);
    EXPECT_EQ(r.zero_interval_count, 0u);
}

TEST(Transfer, InsufficientHorizon) {
    const auto r = transfer_report(synthetic([](double t) { return 0.01 * ramp(t, 380e-6, 1e-6); }), synthetic_options());
    EXPECT_FALSE(r.onset_time);
    EXPECT_TRUE(r.insufficient_horizon);
}

TEST(Transfer, ShortBlipIsNotAnOnset) {
    auto f = [](double t) {
        if (t > 20e-6 && t < 30e-6) return 0.01;
        return 0.01 * ramp(t, 100e-6, 5e-6);
    };
    const auto r = transfer_report(synthetic(f), synthetic_options());
    ASSERT_TRUE(r.onset_time);
    EXPECT_GT(*r.onset_time, 99e-6);
}
