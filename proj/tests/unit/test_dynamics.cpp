#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "optomech/dynamics.hpp"
#include "optomech/steady_state.hpp"
#include "optomech/testkit/oracles.hpp"

using namespace optomech;

namespace {

// (q, p, xL, yL, xR, yR) → (−q, −p, xR, yR, xL, yL)
Mat6 mirror_cov(const Mat6& V) {
    const std::size_t perm[6] = {0, 1, 4, 5, 2, 3};
    const double sign[6] = {-1, -1, 1, 1, 1, 1};
    Mat6 out;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) out(i, j) = sign[i] * sign[j] * V(perm[i], perm[j]);
    return out;
}

TrajectoryConfig exact_steps(const DerivedParams& d, double t_end, std::size_t n) {
    TrajectoryConfig cfg = default_trajectory(d, t_end, t_end / double(n), n);
    return cfg;
}

}  // namespace

TEST(MeanField, OriginWithOneDrive) {
    DerivedParams d = derive_params(test::fig2_params());
    d.eps_R = 0.0;
    const MeanState r = mean_field_rhs(d, MeanState{});
    EXPECT_EQ(r, (MeanState{0.0, 0.0, {d.eps_L, 0.0}, {0.0, 0.0}}));
}

TEST(MeanField, MirrorIsBitExact) {
    const DerivedParams d = derive_params(test::fig2_params(0.019));
    const MeanState s{3.5, -1.25, {1e3, -2e2}, {-7e2, 4e2}};
    EXPECT_EQ(mean_field_rhs(mirrored(d), mirrored(s)), mirrored(mean_field_rhs(d, s)));
}

TEST(CovarianceRhs, Examples) {
    testkit::Rng rng(testkit::RngSeed{11});
    Mat6 V;
    for (double& x : V.data) x = rng.uniform(-1.0, 1.0);
    V = symmetrized(V);
    const Mat6 D = Mat6::diagonal({0.0, 0.3, 1.0, 1.0, 2.0, 2.0});
    EXPECT_EQ(covariance_rhs(Mat6{}, V, D), D);
    const double kappa = 3.0;
    EXPECT_EQ(covariance_rhs(-kappa * Mat6::identity(), 0.5 * Mat6::identity(), kappa * Mat6::identity()), Mat6{});

    for (int k = 0; k < 50; ++k) {
        Mat6 A, W;
        for (double& x : A.data) x = rng.uniform(-2.0, 2.0);
        for (double& x : W.data) x = rng.uniform(-2.0, 2.0);
        W = symmetrized(W);
        EXPECT_LT(max_abs(covariance_rhs(A, W, D) - testkit::covariance_rhs_naive(A, W, D)), 1e-13);
    }
}

TEST(Integrate, DecoupledCavityMatchesClosedForm) {
    DerivedParams d = derive_params(test::fig2_params());
    d.g0_L = d.g0_R = 0.0;
    d.eps_R = 0.5 * d.eps_L;
    TrajectoryConfig cfg = default_trajectory(d, 20e-6, default_step(d) / 4.0, 50);
    const auto traj = integrate(d, cfg);
    const double scale_L = d.eps_L / std::abs(std::complex<double>(d.kappa_L, d.Delta0_L));
    double worst = 0.0;
    for (const auto& s : traj) {
        const auto eL = testkit::driven_cavity_amplitude(d.kappa_L, d.Delta0_L, d.eps_L, s.t);
        const auto eR = testkit::driven_cavity_amplitude(d.kappa_R, d.Delta0_R, d.eps_R, s.t);
        worst = std::max(worst, std::abs(s.mean.alpha_L - eL) / scale_L);
        worst = std::max(worst, std::abs(s.mean.alpha_R - eR) / (0.5 * scale_L));
        EXPECT_EQ(s.mean.q, 0.0);
    }
    EXPECT_LT(worst, 1e-8);
}

TEST(Integrate, FourthOrderConvergence) {
    const DerivedParams d = derive_params(test::fig2_params(0.019));
    const double t_end = 2e-6;
    auto final_state = [&](std::size_t n) { return integrate(d, exact_steps(d, t_end, n)).back(); };
    const auto a = final_state(400), b = final_state(800), c = final_state(1600);
    ASSERT_EQ(a.t, b.t);
    const double e1 = std::abs(a.mean.alpha_L - b.mean.alpha_L);
    const double e2 = std::abs(b.mean.alpha_L - c.mean.alpha_L);
    EXPECT_GT(e1 / e2, 12.0);
    EXPECT_LT(e1 / e2, 20.0);
    const double v1 = max_abs(a.cov.matrix() - b.cov.matrix());
    const double v2 = max_abs(b.cov.matrix() - c.cov.matrix());
    EXPECT_GT(v1 / v2, 12.0);
    EXPECT_LT(v1 / v2, 20.0);
    // step halving at the default step changes nothing beyond 1e-6 relative
    EXPECT_LT(e1 / std::abs(b.mean.alpha_L), 1e-6);
}

TEST(Integrate, UndrivenRelaxesToThermalAndVacuum) {
    DerivedParams d = test::unit_rates();
    d.Gamma_M = 0.5;
    d.nbar = 1.0;
    TrajectoryConfig cfg = default_trajectory(d, 60.0, 0.0, 100);
    cfg.initial_cov = CovMatrix::diagonal({3.0, 0.2, 2.0, 0.1, 1.0, 1.0});
    const auto traj = integrate(d, cfg);
    for (const auto& s : traj) {
        EXPECT_EQ(s.mean, MeanState{});
        EXPECT_TRUE(s.cov.diagonal_nonnegative());
    }
    const Mat6 expect = Mat6::diagonal({1.5, 1.5, 0.5, 0.5, 0.5, 0.5});
    EXPECT_LT(max_abs(traj.back().cov.matrix() - expect), 1e-6);
}

TEST(Integrate, LongTimeCovarianceMatchesAlgebraicLyapunov) {
    DerivedParams d = test::unit_rates();
    d.Gamma_M = 0.3;
    d.g0_L = d.g0_R = 0.05;
    d.eps_L = 1.0;
    d.eps_R = 0.6;
    const auto fp = fixed_points(d);
    ASSERT_EQ(fp.size(), 1u);
    ASSERT_TRUE(fp[0].stable);
    const Mat6 A = drift_matrix(d, fp[0].mean());
    const Mat6 D = diffusion_matrix(d);
    const Mat6 ref = testkit::lyapunov_solve_algebraic(A, D);

    TrajectoryConfig cfg = default_trajectory(d, 150.0, 0.0, 1u << 20);
    cfg.initial_mean = fp[0].mean();
    const Mat6 V = integrate(d, cfg).back().cov.matrix();
    EXPECT_LT(max_abs(V - ref), 1e-6 * max_abs(ref));
}

TEST(Integrate, MirrorSymmetry) {
    const DerivedParams d = derive_params(test::fig2_params(0.019));
    const TrajectoryConfig cfg = default_trajectory(d, 3e-6, 0.0, 25);
    TrajectoryConfig mcfg = cfg;
    mcfg.initial_mean = mirrored(cfg.initial_mean);
    const auto a = integrate(d, cfg);
    const auto b = integrate(mirrored(d), mcfg);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(b[k].mean, mirrored(a[k].mean));
        const Mat6 mv = mirror_cov(a[k].cov.matrix());
        EXPECT_LT(max_abs(b[k].cov.matrix() - mv), 1e-12 * max_abs(mv));
    }
}

TEST(Integrate, TimeRescalingIsExact) {
    const DerivedParams d = derive_params(test::fig2_params(0.019));
    DerivedParams s = d;
    for (double* x : {&s.kappa_L, &s.kappa_R, &s.eps_L, &s.eps_R, &s.g0_L, &s.g0_R, &s.omega_M, &s.Gamma_M,
                      &s.Delta0_L, &s.Delta0_R})
        *x *= 2.0;
    const TrajectoryConfig cfg = default_trajectory(d, 2e-6, 0.0, 10);
    const TrajectoryConfig scfg = default_trajectory(s, 1e-6, 0.0, 10);
    ASSERT_EQ(scfg.dt, 0.5 * cfg.dt);
    const auto a = integrate(d, cfg);
    const auto b = integrate(s, scfg);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(b[k].t, 0.5 * a[k].t);
        EXPECT_EQ(b[k].mean, a[k].mean);
        EXPECT_EQ(b[k].cov, a[k].cov);
    }
}

TEST(Integrate, SamplingSchedule) {
    const DerivedParams d = test::unit_rates();
    TrajectoryConfig cfg = default_trajectory(d, 0.1, 0.01, 3);
    const auto traj = integrate(d, cfg);
    ASSERT_EQ(traj.size(), 5u);
    const double expect[] = {0.0, 0.03, 0.06, 0.09, 0.1};
    for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(traj[k].t, expect[k], 1e-15);
    EXPECT_EQ(step_count(0.1, 0.01), 10u);
    EXPECT_NEAR(default_step(d), 0.02 / 1.0, 1e-15);
    EXPECT_NEAR(max_step(d), 0.05, 1e-15);
}

TEST(Integrate, RejectsBadConfigurations) {
    const DerivedParams d = test::unit_rates();
    TrajectoryConfig cfg = default_trajectory(d, 1.0, 2.0 * max_step(d));
    EXPECT_THROW(integrate(d, cfg), InvalidParameter);
    cfg = default_trajectory(d, 1.0);
    cfg.sample_every = 0;
    EXPECT_THROW(integrate(d, cfg), InvalidParameter);
    cfg = default_trajectory(d, 0.01, 0.02);
    EXPECT_THROW(integrate(d, cfg), InvalidParameter);
    cfg = default_trajectory(d, 1.0);
    cfg.initial_mean.q = std::nan("");
    EXPECT_THROW(integrate(d, cfg), InvalidParameter);
}

TEST(Integrate, DivergenceIsReported) {
    DerivedParams d = test::unit_rates();
    d.kappa_L = -5.0;  // gain instead of loss
    TrajectoryConfig cfg = default_trajectory(d, 20.0);
    cfg.initial_cov = CovMatrix::diagonal({0.5, 0.5, 1.0, 1.0, 0.5, 0.5});
    try {
        integrate(d, cfg);
        FAIL() << "expected DivergenceError";
    } catch (const DivergenceError& e) {
        EXPECT_EQ(e.exit_code(), ExitCode::divergence);
    }
}
