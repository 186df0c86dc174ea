#include <gtest/gtest.h>

#include "optomech/polynomial.hpp"

using namespace optomech;

namespace {
Polynomial from_roots(std::initializer_list<double> roots) {
    Polynomial p{1.0};
    for (double r : roots) p = p * Polynomial{-r, 1.0};
    return p;
}
}  // namespace

TEST(Polynomial, EvaluationAndDerivative) {
    const Polynomial p{1.0, -3.0, 0.0, 2.0};  // 2x³ − 3x + 1
    EXPECT_EQ(p.degree(), 3);
    EXPECT_EQ(p(2.0), 11.0);
    EXPECT_EQ(p.derivative()(2.0), 21.0);
    EXPECT_TRUE((Polynomial{0.0, 0.0}.is_zero()));
    EXPECT_EQ((p - p).degree(), -1);
}

TEST(Polynomial, SimpleRoots) {
    const auto roots = real_roots(from_roots({-2.0, -1.0, 1.0, 2.0}), -10.0, 10.0);
    ASSERT_EQ(roots.size(), 4u);
    const double expect[] = {-2.0, -1.0, 1.0, 2.0};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(roots[i].value, expect[i], 1e-12);
        EXPECT_EQ(roots[i].multiplicity, 1);
    }
}

TEST(Polynomial, RepeatedRootsCarryMultiplicity) {
    const auto r2 = real_roots(from_roots({1.0, 1.0, -2.0}), -10.0, 10.0);
    ASSERT_EQ(r2.size(), 2u);
    EXPECT_NEAR(r2[0].value, -2.0, 1e-12);
    EXPECT_EQ(r2[0].multiplicity, 1);
    EXPECT_NEAR(r2[1].value, 1.0, 1e-8);
    EXPECT_EQ(r2[1].multiplicity, 2);

    const auto r3 = real_roots(from_roots({0.5, 0.5, 0.5}), -10.0, 10.0);
    ASSERT_EQ(r3.size(), 1u);
    EXPECT_EQ(r3[0].multiplicity, 3);
}

TEST(Polynomial, NoRealRootsAndInterval) {
    EXPECT_TRUE(real_roots(Polynomial{1.0, 0.0, 1.0}, -10.0, 10.0).empty());
    EXPECT_EQ(real_roots(from_roots({-5.0, 0.25, 5.0}), -1.0, 1.0).size(), 1u);
    const auto lin = real_roots(Polynomial{-3.0, 2.0}, 0.0, 2.0);
    ASSERT_EQ(lin.size(), 1u);
    EXPECT_EQ(lin[0].value, 1.5);
    EXPECT_THROW(real_roots(Polynomial{}, 0.0, 1.0), std::invalid_argument);
}

TEST(Polynomial, QuinticWithCloseRoots) {
    const auto roots = real_roots(from_roots({-0.9, -0.3, 0.0, 0.31, 0.32}), -1.0, 1.0);
    ASSERT_EQ(roots.size(), 5u);
    EXPECT_NEAR(roots[3].value, 0.31, 1e-10);
    EXPECT_NEAR(roots[4].value, 0.32, 1e-10);
}
