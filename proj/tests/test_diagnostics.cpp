#include <gtest/gtest.h>

#include <Eigen/QR>
#include <cmath>
#include <random>

#include "qh/diagnostics.hpp"
#include "qh/special.hpp"

using namespace qh;

namespace {
DenseMatrix random_unitary(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    DenseMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
    Eigen::HouseholderQR<DenseMatrix> qr(a);
    return qr.householderQ() * DenseMatrix::Identity(n, n);
}

// rho_inf with pi replaced by another constant
cplx rho_inf_wrong_pi(cplx z) {
    const double c = 3.2;
    return std::pow(c, z - 0.5) * std::exp(log_gamma(z / 2.0) - log_gamma((1.0 - z) / 2.0));
}
}  // namespace

TEST(Suite, PassesForStandardSpecs) {
    for (const char* s : {"inf", "p:2", "p:3", "inf*p:2", "gauss:3:1"}) {
        const auto r = verify_suite(parse_spec(s), 1e-9, 30);
        EXPECT_TRUE(r.all_pass()) << s;
        for (const auto& i : r.results) EXPECT_EQ(i.samples, 30) << s << " " << i.name;
    }
    const auto inf = verify_suite(FactorSpec::inf(), 1e-9, 30);
    ASSERT_NE(inf.find("functional_equation"), nullptr);
    ASSERT_NE(inf.find("cosine_form"), nullptr);
    const auto p2 = verify_suite(FactorSpec::prime(2), 1e-9, 30);
    ASSERT_NE(p2.find("periodicity"), nullptr);
    ASSERT_NE(p2.find("coth_decomposition"), nullptr);
    ASSERT_NE(p2.find("horizontal_line"), nullptr);
    const auto prod = verify_suite(parse_spec("inf*p:2"), 1e-9, 10);
    EXPECT_NE(prod.find("periodicity[p:2]"), nullptr);
}

TEST(Suite, NegativeControlBreaksIdentities) {
    const auto r = verify_suite(FactorSpec::inf(), 1e-9, 30, 1, rho_inf_wrong_pi);
    EXPECT_FALSE(r.all_pass());
    const auto* fe = r.find("functional_equation");
    ASSERT_NE(fe, nullptr);
    EXPECT_FALSE(fe->pass);
    // the wrong constant keeps unit modulus; a scaled ratio does not
    EXPECT_TRUE(r.find("unit_modulus")->pass);
    const auto scaled = verify_suite(FactorSpec::inf(), 1e-9, 30, 1, [](cplx z) { return 1.001 * rho_inf(z); });
    EXPECT_FALSE(scaled.find("unit_modulus")->pass);
    EXPECT_FALSE(scaled.find("reflection")->pass);
}

TEST(Gauss, Factorization) {
    for (int m : {1, 2, 3, 5}) {
        EXPECT_TRUE(gauss_product_check(m, false, 20).pass) << m;
        EXPECT_TRUE(gauss_product_check(m, true, 20).pass) << m;
    }
}

TEST(Triangular, CanonicalUnitary) {
    // [[1, 0], [0, 1]] with H2 = K2
    const DenseMatrix I = DenseMatrix::Identity(4, 4);
    EXPECT_TRUE(triangular_unitary_check(I, DenseMatrix::Zero(4, 4), I).pass(1e-12));
}

TEST(Triangular, RandomConstructionAndNegativeControl) {
    std::mt19937_64 rng(17);
    const int d = 8, r = 3, m = 4;
    const DenseMatrix W = random_unitary(d, rng);
    const DenseMatrix Q = random_unitary(d - r + m, rng);
    const DenseMatrix u11 = W.leftCols(r);
    const DenseMatrix u22 = Q.leftCols(m).adjoint();
    const DenseMatrix u12 = W.rightCols(d - r) * Q.rightCols(d - r).adjoint();
    const auto good = triangular_unitary_check(u11, u12, u22);
    EXPECT_LT(good.max(), 1e-12);

    DenseMatrix bad12 = u12;
    bad12(0, 0) += 1e-3;
    EXPECT_FALSE(triangular_unitary_check(u11, bad12, u22).pass(1e-12));
    EXPECT_FALSE(triangular_unitary_check(2.0 * u11, u12, u22).pass(1e-12));
}
