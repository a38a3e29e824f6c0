#include <gtest/gtest.h>

#include <cmath>

#include "qh/blaschke.hpp"

using namespace qh;

TEST(Iota, Values) {
    EXPECT_LT(std::abs(iota(2, 0.0) + 0.5), 1e-15);
    EXPECT_LT(std::abs(iota(3, 0.0) + 1.0 / 3.0), 1e-15);
    // unit modulus on the circle away from v = 1
    for (double th : {0.5, 2.0, 4.0}) EXPECT_NEAR(std::abs(iota(5, std::polar(1.0, th))), 1.0, 1e-13);
    EXPECT_THROW(iota(2, 1.0), Error);
}

TEST(Blaschke, VanishesAtZeros) {
    for (long n : {-3L, 0L, 5L}) {
        const auto b = blaschke(2, x_prime(2, n), 100);
        EXPECT_EQ(b.value, cplx(0.0));
    }
    EXPECT_GT(std::abs(blaschke(2, x_prime(2, 101), 100).value), 0.0);
}

TEST(Blaschke, UnimodularOnCircle) {
    for (double th : {0.3, 1.7, 3.0, 5.5}) {
        const auto b = blaschke(3, std::polar(1.0, th), 500);
        EXPECT_NEAR(std::abs(b.value), 1.0, 1e-12);
    }
    EXPECT_THROW(blaschke(2, 1.5, 10), Error);
    EXPECT_THROW(blaschke(4, 0.1, 10), Error);
}

TEST(Blaschke, TailBoundHolds) {
    for (cplx v : {cplx(0.1, 0.2), cplx(-0.8, 0.1), cplx(0.85, -0.3)}) {
        const auto coarse = blaschke(2, v, 200);
        const auto fine = blaschke(2, v, 20000);
        EXPECT_LE(std::abs(coarse.value - fine.value), coarse.tail_bound + fine.tail_bound) << v;
        EXPECT_LT(fine.tail_bound, coarse.tail_bound);
    }
}

TEST(Blaschke, TaylorCoefficients) {
    const int N = 50, deg = 60;
    const auto c = blaschke_taylor(3, N, deg);
    for (cplx v : {cplx(0.2, 0.0), cplx(-0.1, 0.15), cplx(0.0, -0.25)}) {
        cplx s = 0.0, pw = 1.0;
        for (int i = 0; i < deg; ++i, pw *= v) s += c[static_cast<std::size_t>(i)] * pw;
        EXPECT_LT(std::abs(s - blaschke(3, v, N).value), 1e-13);
    }
}

TEST(Blaschke, IdentityWithInnerFunction) {
    const auto r = blaschke_identity(2, 2000, 20);
    EXPECT_EQ(r.samples, 20);
    EXPECT_TRUE(r.below_bound);
    EXPECT_LT(r.max_residual, r.max_bound);
    EXPECT_LT(r.max_bound, 2e-3);
}

TEST(Blaschke, KernelMembershipSmall) {
    const auto k = kernel_membership(2, 64, {{1.0}, {0.0, 1.0, -0.5}}, 500, 4000);
    ASSERT_EQ(k.residuals.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_LT(k.residuals[i], 1e-2);
        EXPECT_GT(k.coordinate_residuals[i], 0.0);
    }
    EXPECT_THROW(kernel_membership(2, 64, {{0.0}}), Error);
}
