#include <gtest/gtest.h>

#include <cmath>

#include "qh/fourier.hpp"

using namespace qh;

namespace {
std::vector<cplx> sample(const std::function<cplx(cplx)>& f, const BoundaryGrid& g) {
    std::vector<cplx> out(static_cast<std::size_t>(g.size()));
    for (int j = 0; j < g.size(); ++j) out[static_cast<std::size_t>(j)] = f(g.point(j));
    return out;
}
double binom(int n, int k) { return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0))); }
}  // namespace

TEST(Quadrature, Monomials) {
    BoundaryGrid g(256, 0.5);
    const auto s = quadrature_coeffs(sample([](cplx v) { return v * v * v + 2.0 / (v * v); }, g), g, -10, 10);
    for (int k = -10; k <= 10; ++k) {
        const cplx want = k == 3 ? 1.0 : k == -2 ? 2.0 : 0.0;
        EXPECT_LT(std::abs(s.at(k) - want), 1e-14) << k;
    }
    EXPECT_EQ(s.detail, "dft");
    EXPECT_THROW(quadrature_coeffs(s.values, g, -100, 0), Error);
    EXPECT_THROW(s.at(11), Error);
}

TEST(DiskPrincipalPart, MatchesTransportedSeries) {
    // A1/(psi(v) - z0) + A2/(psi(v) - z0)^2 is smooth on the circle; its negative coefficients are
    // exactly the disk principal part at x0 = psi_inv(z0)
    const cplx z0(-1.0, 2.0), A1(0.3, -0.2), A2(-0.7, 0.4);
    ProductPole pole{z0, 2, {A1, A2}, {}, 0};
    const auto D = disk_principal_part(pole);
    const cplx x0 = psi_inv(z0);
    BoundaryGrid g(1024, 0.5);
    const auto s = quadrature_coeffs(sample([&](cplx v) {
                                         const cplx w = psi(v) - z0;
                                         return A1 / w + A2 / (w * w);
                                     }, g), g, -40, -1);
    for (int k = 1; k <= 40; ++k) {
        cplx want = 0.0;
        for (int i = 1; i <= 2; ++i)
            if (k >= i) want += D[static_cast<std::size_t>(i - 1)] * binom(k - 1, i - 1) * std::pow(x0, k - i);
        EXPECT_LT(std::abs(s.at(-k) - want), 1e-13) << k;
    }
    // simple pole closed form
    ProductPole simple{z0, 1, {A1}, {}, 0};
    EXPECT_LT(std::abs(disk_principal_part(simple)[0] + 8.0 * A1 / ((2.0 * z0 - 3.0) * (2.0 * z0 - 3.0))), 1e-15);
}

TEST(ResidueSeries, InfFirstCoefficient) {
    // a_{-1} = sum_n D1(n) with D1 = -8 A_n / (4n + 3)^2 for the pole at -2n
    double want = 0.0;
    for (int n = 0; n < 40; ++n) want += -8.0 * residue_rho_inf(n).real() / ((4.0 * n + 3) * (4.0 * n + 3));
    const auto s = residue_coeffs(FactorSpec::inf(), 5);
    EXPECT_NEAR(s.at(-1).real(), want, 1e-15);
    EXPECT_NEAR(s.at(-1).imag(), 0.0, 1e-15);
    // the pole at 0 alone contributes -16/9
    EXPECT_NEAR(-8.0 * residue_rho_inf(0).real() / 9.0, -16.0 / 9.0, 1e-15);
}

TEST(ResidueSeries, MatchesLineQuadratureForPrime) {
    const auto spec = FactorSpec::prime(2);
    const auto r = residue_coeffs(spec, 12);
    const auto q = line_quadrature_coeffs(spec, -12, -1);
    const auto c = compare_streams(r, q);
    EXPECT_LT(c.max_diff, 1e-10);
    EXPECT_TRUE(c.within_bounds);
}

TEST(ResidueSeries, TailCorrectionIsConsistent) {
    const auto spec = FactorSpec::prime(3);
    ResidueOptions a, b;
    a.prime_terms = 2000;
    b.prime_terms = 8000;
    const auto c = compare_streams(residue_coeffs(spec, 30, a), residue_coeffs(spec, 30, b));
    EXPECT_TRUE(c.within_bounds);
    EXPECT_LT(c.max_diff, 1e-9);
    // without the closed-form remainder the truncation error is visible
    a.tail_correction = false;
    const auto raw = compare_streams(residue_coeffs(spec, 30, a), residue_coeffs(spec, 30, b));
    EXPECT_GT(raw.max_diff, 1e-6);
}

TEST(ResidueSeries, PrimeTailClosedFormAgainstDirectSum) {
    // the remainder beyond N against an explicit sum over N < |n| <= 200000
    const long p = 2;
    const double L = std::log(2.0), A = 0.5 / L;
    const int N = 1000, M = 200000, k = 7;
    cplx direct = 0.0;
    for (long n = N + 1; n <= M; ++n)
        for (long s : {n, -n}) {
            const cplx z0(0.0, 2 * pi * s / L);
            direct += -8.0 * A / ((2.0 * z0 - 3.0) * (2.0 * z0 - 3.0)) * std::pow(psi_inv(z0), k - 1);
        }
    const cplx tail = prime_series_tail(p, N, k) - prime_series_tail(p, M, k);
        // the closed form is an Euler-Maclaurin remainder with an O(N^-3) error of about 3e-12 here
    EXPECT_LT(std::abs(tail - direct), 1e-11);
}

TEST(ResidueSeries, InfCoefficientsDecay) {
    const auto s = residue_coeffs(FactorSpec::inf(), 400);
    // |a_{-k}| falls faster than any power and at least like 2^{-sqrt k} up to a constant
    for (int k : {50, 100, 200, 400}) EXPECT_LT(std::abs(s.at(-k)), 10.0 * std::pow(2.0, -std::sqrt(double(k)))) << k;
}

TEST(PolePart, CoefficientsMatchSymbolOnNegativeSide) {
    const auto spec = FactorSpec::prime(2);
    const auto b = pole_part_coeffs(spec, -20, -1, 10000);
    const auto a = line_quadrature_coeffs(spec, -20, -1);
    EXPECT_LT(compare_streams(a, b).max_diff, 1e-10);
}

TEST(Compare, DisjointRangesThrow) {
    const auto a = residue_coeffs(FactorSpec::prime(2), 3);
    CoefficientStream b = a;
    b.k_min = 1;
    b.k_max = 3;
    EXPECT_THROW(compare_streams(a, b), Error);
}
