#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "optomech/core_model.hpp"
#include "optomech/dynamics.hpp"
#include "optomech/testkit/oracles.hpp"

using namespace optomech;

TEST(CoreModel, DerivedRatesAtFig2Values) {
    const DerivedParams d = derive_params(test::fig2_params());
    // κ = πc / (2Fℓ) = π · 2.99792458e8 / (2 · 2.6e5 · 0.022)
    EXPECT_NEAR(d.kappa_L, 82327.43, 0.01);
    EXPECT_EQ(d.kappa_L, d.kappa_R);
    EXPECT_EQ(d.omega_M, 1e6);
    EXPECT_EQ(d.Gamma_M, 50.0);
    EXPECT_EQ(d.nbar, 0.0);
    EXPECT_EQ(d.Delta0_L, 6.5e6);
    // g0 = (ω_cav/ℓ) sqrt(ħ / (2mΩ))
    const double omega_cav = 2.0 * constants::pi * constants::speed_of_light / 1064e-9;
    EXPECT_NEAR(d.g0_L, omega_cav / 0.022 * std::sqrt(constants::hbar / (2.0 * 1e-11 * 1e6)), 1e-9 * d.g0_L);
    // ε² = 2κP / (ħ ω_d), ω_d = ω_cav − Δ0
    EXPECT_NEAR(d.eps_L * d.eps_L, 2.0 * d.kappa_L * 70e-6 / (constants::hbar * (omega_cav - 6.5e6)), 1e-9 * d.eps_L * d.eps_L);
}

TEST(CoreModel, OrdinaryConventionScalesByTwoPi) {
    PhysicalParams p = test::fig2_params();
    const DerivedParams a = derive_params(p);
    p.frequency_convention = FrequencyConvention::ordinary;
    const DerivedParams o = derive_params(p);
    EXPECT_DOUBLE_EQ(o.omega_M, 2.0 * constants::pi * a.omega_M);
    EXPECT_DOUBLE_EQ(o.Delta0_L, 2.0 * constants::pi * a.Delta0_L);
    EXPECT_EQ(o.kappa_L, a.kappa_L);
    EXPECT_NEAR(o.g0_L * std::sqrt(2.0 * constants::pi), a.g0_L, 1e-12 * a.g0_L);
}

TEST(CoreModel, ThermalOccupation) {
    EXPECT_EQ(thermal_occupation(1e6, 0.0), 0.0);
    const double T = 300.0;
    const double x = constants::hbar * 1e6 / (constants::boltzmann * T);
    EXPECT_NEAR(thermal_occupation(1e6, T), 1.0 / x - 0.5, 1e-6 / x);
}

TEST(CoreModel, ValidationRejectsNonPhysicalInputs) {
    PhysicalParams p = test::fig2_params();
    p.left.length = 0.0;
    EXPECT_THROW(derive_params(p), InvalidParameter);
    p = test::fig2_params();
    p.mechanical.quality_factor = -1.0;
    EXPECT_THROW(derive_params(p), InvalidParameter);
    p = test::fig2_params();
    p.right.drive_power = -1e-6;
    EXPECT_THROW(derive_params(p), InvalidParameter);
    p = test::fig2_params();
    p.mechanical.bath_temperature = -1.0;
    EXPECT_THROW(derive_params(p), InvalidParameter);
}

TEST(CoreModel, DriftMatrixIsJacobianOfMeanField) {
    const DerivedParams d = derive_params(test::fig2_params(0.019));
    const MeanState s{123.0, -45.0, {800.0, -300.0}, {-150.0, 900.0}};
    const Mat6 A = drift_matrix(d, s);
    const double r2 = std::sqrt(2.0);
    const Mat6 T = Mat6::diagonal({1.0, 1.0, r2, r2, r2, r2});
    const Mat6 Ti = Mat6::diagonal({1.0, 1.0, 1.0 / r2, 1.0 / r2, 1.0 / r2, 1.0 / r2});
    const Mat6 J = T * testkit::finite_difference_jacobian([&](const MeanState& m) { return mean_field_rhs(d, m); }, s) * Ti;
    EXPECT_LT(max_abs(A - J), 1e-6 * max_abs(A));
}

TEST(CoreModel, DriftSignStructure) {
    const DerivedParams d = test::unit_rates();
    const MeanState s{};
    const Mat6 A = drift_matrix(d, s);
    EXPECT_EQ(A(0, 1), 1.0);
    EXPECT_EQ(A(1, 0), -1.0);
    EXPECT_EQ(A(1, 1), -0.1);
    EXPECT_EQ(A(2, 3), 0.5);
    EXPECT_EQ(A(3, 2), -0.5);
    EXPECT_EQ(A(4, 5), 0.5);
    // at q > 0 the left cavity is pushed up, the right one down
    DerivedParams g = d;
    g.g0_L = g.g0_R = 0.1;
    const Mat6 B = drift_matrix(g, MeanState{1.0, 0.0, {}, {}});
    EXPECT_GT(B(2, 3), 0.5);
    EXPECT_LT(B(4, 5), 0.5);
}

TEST(CoreModel, DiffusionMatrix) {
    DerivedParams d = test::unit_rates();
    d.nbar = 2.0;
    const Mat6 D = diffusion_matrix(d);
    EXPECT_EQ(D, Mat6::diagonal({0.0, 0.1 * 5.0, 1.0, 1.0, 1.0, 1.0}));
}

TEST(CoreModel, CovMatrixSymmetrizesAndThermalState) {
    Mat6 m = Mat6::identity();
    m(0, 3) = 1.0;
    const CovMatrix c(m);
    EXPECT_EQ(c(0, 3), 0.5);
    EXPECT_EQ(c(3, 0), 0.5);
    const CovMatrix t = CovMatrix::thermal(1.5);
    EXPECT_EQ(t(0, 0), 2.0);
    EXPECT_EQ(t(1, 1), 2.0);
    EXPECT_EQ(t(4, 4), 0.5);
    EXPECT_TRUE(t.diagonal_nonnegative());
}

TEST(CoreModel, MirrorIsAnInvolution) {
    const DerivedParams d = derive_params(test::fig2_params(0.019));
    const DerivedParams m = mirrored(mirrored(d));
    EXPECT_EQ(m.kappa_L, d.kappa_L);
    EXPECT_EQ(m.kappa_R, d.kappa_R);
    EXPECT_EQ(mirrored(d).kappa_L, d.kappa_R);
    const MeanState s{1.0, 2.0, {3.0, 4.0}, {5.0, 6.0}};
    EXPECT_EQ(mirrored(mirrored(s)), s);
}
