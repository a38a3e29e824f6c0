#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/laguerre.hpp>
#include <cmath>
#include <random>

#include "qh/extended.hpp"
#include "qh/factors.hpp"
#include "qh/special.hpp"

using namespace qh;

TEST(LogGamma, Factorial) { EXPECT_NEAR(std::abs(log_gamma(5.0) - std::log(24.0)), 0.0, 1e-14); }

TEST(LogGamma, Half) { EXPECT_NEAR(std::abs(log_gamma(0.5) - 0.5 * std::log(pi)), 0.0, 1e-14); }

TEST(LogGamma, RealAxisMatchesBoost) {
    for (double x : {0.1, 0.7, 1.5, 3.25, 10.5, 42.0, 170.5})
        EXPECT_NEAR(log_gamma(x).real(), boost::math::lgamma(x), 1e-12 * std::max(1.0, std::abs(boost::math::lgamma(x))));
}

TEST(LogGamma, MatchesExtendedPrecision) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> re(-30.0, 30.0), im(-1000.0, 1000.0);
    for (int i = 0; i < 200; ++i) {
        const cplx z(re(rng), im(rng));
        const cplx a = log_gamma(z), b = extended::log_gamma(z);
        // branches may differ by 2 pi i m; the error is relative to |log Gamma|
        EXPECT_LT(std::abs(std::exp(a - b) - 1.0), 1e-12 * std::max(1.0, std::abs(b))) << z;
    }
}

TEST(LogGamma, PoleCarriesResidue) {
    for (int n : {0, 1, 3}) {
        try {
            log_gamma(cplx(-n, 0.0));
            FAIL() << "no pole error at " << -n;
        } catch (const PoleError& e) {
            const double want = (n % 2 ? -1.0 : 1.0) / std::tgamma(n + 1.0);
            EXPECT_NEAR(std::abs(e.datum().residue() - want), 0.0, 1e-15);
            EXPECT_EQ(e.datum().order, 1);
        }
    }
}

TEST(LogGamma, StirlingBandOnVerticalLines) {
    // |Gamma(a + it)| exp(-sigma_a(t)) approaches sqrt(2 pi) and stays in a fixed band
    for (double a : {0.0, 1.0 / 3.0}) {
        for (double t = 10.0; t <= 1000.0; t *= 1.3) {
            const double ratio = std::exp(log_gamma(cplx(a, t)).real() - stirling_sigma(a, t));
            EXPECT_GT(ratio, 2.0);
            EXPECT_LT(ratio, 3.0);
        }
    }
}

TEST(Coth, LaurentBranchIsContinuous) {
    for (cplx w : {cplx(9e-5, 0.0), cplx(0.0, 9.9e-5), cplx(1.1e-4, 1e-6)}) {
        const cplx direct = std::cosh(w) / std::sinh(w);
        EXPECT_LT(std::abs(coth(w) - direct) / std::abs(direct), 1e-11);
    }
    EXPECT_LT(std::abs(coth(cplx(0.7, -2.0)) - std::cosh(cplx(0.7, -2.0)) / std::sinh(cplx(0.7, -2.0))), 1e-14);
}

TEST(Laguerre, MinusOneAgainstBoostIdentity) {
    // L_n^{(-1)}(x) = -(x/n) L_{n-1}^{(1)}(x)
    const double x = 2.0 * std::log(2.0);
    const auto tab = laguerre_table(60, -1.0, x);
    EXPECT_DOUBLE_EQ(tab[0], 1.0);
    for (int n = 1; n <= 60; ++n) {
        const double want = -(x / n) * boost::math::laguerre(n - 1, 1, x);
        EXPECT_NEAR(tab[n], want, 1e-12 * std::max(1.0, std::abs(want)));
    }
}
