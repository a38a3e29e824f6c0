#include <gtest/gtest.h>

#include <boost/math/special_functions/laguerre.hpp>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "qh/sonin.hpp"

using namespace qh;

TEST(Sonin, UnitSymbolHasNoKernel) {
    SoninBasis b;
    b.place_set = {Place::archimedean()};
    b.n_max = 16;
    b.symbol.k_min = -63;
    b.symbol.k_max = 15;
    b.symbol.values.assign(79, 0.0);
    b.symbol.error.assign(79, 0.0);
    b.symbol.values[63] = 1.0;
    b.gram = DenseMatrix::Identity(16, 16);
    const auto r = sonin_kernel(b, 16, 1e-3);
    EXPECT_EQ(r.kernel_basis.cols(), 0);
    EXPECT_EQ(r.rows, 64);
    EXPECT_NEAR(r.min_sigma, 1.0, 1e-14);
}

TEST(Sonin, Validation) {
    EXPECT_THROW(sonin_kernel({Place::prime(2)}, 8, 1e-3), Error);
    EXPECT_THROW(sonin_kernel({Place::archimedean()}, 600, 1e-3), Error);
    EXPECT_THROW(d_multiplier_coeffs({Place::archimedean()}, {Place::archimedean()}, -4, 4), Error);
    EXPECT_THROW(d_multiplier_coeffs({Place::archimedean(), Place::prime(2)}, {Place::archimedean()}, -4, 4), Error);
}

TEST(Sonin, KernelVectorsAreAnnihilated) {
    // rows with m >= n only see negative coefficients; take those from the residue series
    const int n = 128;
    const auto r = sonin_kernel({Place::archimedean()}, n, 1e-3);
    ASSERT_GE(r.kernel_basis.cols(), 1);
    EXPECT_EQ(r.rows, 4 * n);
    const auto line = line_quadrature_coeffs(FactorSpec::inf(), 0, n - 1);
    const auto res = residue_coeffs(FactorSpec::inf(), r.rows - 1);
    DenseMatrix T(r.rows, n);
    for (int m = 0; m < r.rows; ++m)
        for (int j = 0; j < n; ++j) T(m, j) = j >= m ? line.at(j - m) : res.at(j - m);
    for (int c = 0; c < r.kernel_basis.cols(); ++c) {
        EXPECT_LT((T * r.kernel_basis.col(c)).norm(), 1e-3);
        EXPECT_NEAR(r.kernel_basis.col(c).norm(), 1.0, 1e-12);
    }
    for (std::size_t i = 1; i < r.kernel_sigma.size(); ++i) EXPECT_LE(r.kernel_sigma[i - 1], r.kernel_sigma[i]);
}

TEST(Sonin, PrimeBasisGramAndRows) {
    const std::vector<Place> F{Place::archimedean(), Place::prime(2)};
    const auto b = sonin_basis(F, 128);
    // Poisson mean of |1 - p^{-1/2} e^{-isL}|^2 is 1 + 1/p - 2 p^{-1/2} e^{-L}
    EXPECT_NEAR(b.gram(0, 0).real(), 1.5 - 2.0 * std::sqrt(0.5) * 0.5, 1e-10);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(b.gram);
    EXPECT_GT(es.eigenvalues()(0), std::pow(1.0 - std::sqrt(0.5), 2) - 1e-8);
    EXPECT_LT(es.eigenvalues()(127), std::pow(1.0 + std::sqrt(0.5), 2) + 1e-8);
    const auto r = sonin_kernel(b, 128, 1e-3);
    ASSERT_GE(r.kernel_basis.cols(), 1);
    const DenseMatrix I = r.kernel_basis.adjoint() * b.gram * r.kernel_basis;
    EXPECT_TRUE(I.isApprox(DenseMatrix::Identity(I.rows(), I.cols()), 1e-10));
    SoninBasis half = b;
    half.rows_factor = 2;
    EXPECT_EQ(sonin_kernel(half, 128, 1e-3).kernel_basis.cols(), r.kernel_basis.cols());
}

TEST(DMultiplier, SinglePrimeLaguerre) {
    // (1 - p^{-z}) o psi has c_0 = 1 - p^{-3/2} and c_{-n} = -p^{-3/2} L_n^{(-1)}(2 log p)
    for (long p : {2L, 3L}) {
        const double L = std::log(double(p)), x = 2.0 * L;
        const auto d = d_multiplier_coeffs({Place::archimedean()}, {Place::archimedean(), Place::prime(p)}, -12, 4);
        EXPECT_LT(std::abs(d.at(0) - (1.0 - std::pow(p, -1.5))), 1e-10);
        for (int n = 1; n <= 12; ++n) {
            const double lag = -(x / n) * boost::math::laguerre(n - 1, 1, x);
            EXPECT_LT(std::abs(d.at(-n) + std::pow(p, -1.5) * lag), 1e-10) << p << " " << n;
        }
        for (int k = 1; k <= 4; ++k) EXPECT_LT(std::abs(d.at(k)), 1e-10);
    }
}

TEST(DMultiplier, TwoPrimesConvolve) {
    const std::vector<Place> F{Place::archimedean()};
    const auto d2 = d_multiplier_coeffs(F, {Place::archimedean(), Place::prime(2)}, -20, 0);
    const auto d3 = d_multiplier_coeffs(F, {Place::archimedean(), Place::prime(3)}, -20, 0);
    const auto d6 = d_multiplier_coeffs(F, {Place::archimedean(), Place::prime(2), Place::prime(3)}, -20, 0);
    for (int k = 0; k <= 20; ++k) {
        cplx s = 0.0;
        for (int l = 0; l <= k; ++l) s += d2.at(-l) * d3.at(-(k - l));
        EXPECT_LT(std::abs(s - d6.at(-k)), 1e-10) << k;
    }
}
