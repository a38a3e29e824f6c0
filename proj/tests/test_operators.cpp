#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "qh/operators.hpp"
#include "qh/pole_space.hpp"

using namespace qh;

namespace {
CoefficientStream delta_stream(int k_min, int k_max, int at) {
    CoefficientStream s;
    s.k_min = k_min;
    s.k_max = k_max;
    s.values.assign(static_cast<std::size_t>(k_max - k_min + 1), 0.0);
    s.error.assign(s.values.size(), 0.0);
    s.values[static_cast<std::size_t>(at - k_min)] = 1.0;
    return s;
}
}  // namespace

TEST(Truncation, HankelCorner) {
    const auto h = hankel_truncation(delta_stream(-7, 0, -1), 4);
    EXPECT_EQ(h(0, 0), cplx(1.0));
    EXPECT_NEAR(h.norm(), 1.0, 0.0);
    const auto h3 = hankel_truncation(delta_stream(-7, -1, -3), 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_EQ(h3(i, j), cplx(i + j == 2 ? 1.0 : 0.0));
    EXPECT_THROW(hankel_truncation(delta_stream(-5, -1, -1), 4), Error);
}

TEST(Truncation, ToeplitzIdentityAndShift) {
    EXPECT_TRUE(toeplitz_u22(delta_stream(-5, 5, 0), 6).isApprox(DenseMatrix::Identity(6, 6)));
    const auto s = toeplitz_u22(delta_stream(-5, 5, 1), 6);
    for (int m = 0; m < 6; ++m)
        for (int j = 0; j < 6; ++j) EXPECT_EQ(s(m, j), cplx(j == m + 1 ? 1.0 : 0.0));
}

TEST(RankOne, MatchesHankelSection) {
    for (const char* name : {"inf", "p:2", "inf*p:2"}) {
        const auto spec = parse_spec(name);
        const int n = 24;
        const auto h = hankel_truncation(residue_coeffs(spec, 2 * n - 1), n);
        const auto r = rank_one_materialize(rank_one_model(spec), n);
        EXPECT_LT((h - r).cwiseAbs().maxCoeff(), 1e-12) << name;
    }
}

TEST(RankOne, UnitWeightModelForInf) {
    const int n = 24;
    const auto h = hankel_truncation(residue_coeffs(FactorSpec::inf(), 2 * n - 1), n);
    const auto r = rank_one_materialize(rank_one_model_inf_unit(40), n);
    EXPECT_LT((h - r).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(RankOne, DoublePoleWeightsMatchClosedForms) {
    const double g = euler_gamma;
    for (long p : {2L, 3L, 7L}) {
        const double L = std::log(double(p));
        const double digamma_half = -g - 2.0 * std::log(2.0);
        const double alpha =
            8.0 / (27.0 * p * L) * ((p - 1.0) * (3.0 * g - 8.0 + 6.0 * std::log(pi) - 3.0 * digamma_half) - 3.0 * (p - 3.0) * L);
        const double beta = -128.0 * (p - 1.0) / (27.0 * p * L);
        const auto model = rank_one_model(parse_spec("inf*p:" + std::to_string(p)));
        ASSERT_TRUE(model.finite_rank_extra.has_value());
        EXPECT_LT(std::abs(model.finite_rank_extra->x + 1.0 / 3.0), 1e-15);
        EXPECT_LT(std::abs(model.finite_rank_extra->alpha - alpha), 1e-10 * std::abs(alpha)) << p;
        EXPECT_LT(std::abs(model.finite_rank_extra->beta - beta), 1e-10 * std::abs(beta)) << p;
    }
}

TEST(RankOne, TruncatedNorm) {
    const cplx x(0.3, -0.6);
    EXPECT_NEAR(truncated_norm_sq(x, 10), (1.0 - std::pow(std::norm(x), 10)) / (1.0 - std::norm(x)), 1e-14);
    EXPECT_NEAR(truncated_norm_sq(1.0, 7), 7.0, 1e-14);
}

TEST(Spectra, ProfileOfDiagonal) {
    DenseMatrix m = DenseMatrix::Zero(40, 40);
    for (int k = 0; k < 40; ++k) m(k, k) = std::pow(k + 1.0, -1.5);
    const auto p = singular_values(m);
    EXPECT_EQ(p.numerical_rank, 40);
    EXPECT_NEAR(p.power_fit.parameter, 1.5, 1e-9);
    EXPECT_GT(p.power_fit.r_squared, 0.999999);
    EXPECT_EQ(p.fitted_decay.model, DecayFit::Model::PowerLaw);
    m(3, 3) = std::nan("");
    EXPECT_THROW(singular_values(m), Error);
}

TEST(Spectra, PoleSpaceMatchesCoordinateSvd) {
    struct Case {
        const char* spec;
        int arch, prime, n;
    };
    for (const auto& c : {Case{"inf", 6, 1, 400}, Case{"inf*p:2", 3, 1, 1200}}) {
        const auto spec = parse_spec(c.spec);
        PoleTruncation t;
        t.arch_terms = c.arch;
        t.prime_terms = c.prime;
        ResidueOptions o;
        o.arch_terms = c.arch;
        o.prime_terms = c.prime;
        o.tail_correction = false;
        const auto exact = pole_space_profile(pole_atoms(spec, t), c.n);
        const auto coord = singular_values(rank_one_materialize(rank_one_model(spec, o), c.n));
        const double top = coord.singular_values[0];
        for (int k = 0; k < 6; ++k)
            EXPECT_NEAR(exact.singular_values[static_cast<std::size_t>(k)], coord.singular_values[static_cast<std::size_t>(k)], 1e-10 * top)
                << c.spec << " " << k;
    }
}

TEST(Spectra, AtomGramAgainstSums) {
    const cplx a(0.4, 0.3), b(-0.2, 0.5);
    auto v = [](PoleAtom::Kind k, cplx x, int i) -> cplx {
        switch (k) {
            case PoleAtom::Kind::P: return std::pow(x, i);
            case PoleAtom::Kind::D: return i >= 1 ? double(i) * std::pow(x, i - 1) : 0.0;
            default: return i >= 2 ? double(i) * (i - 1) * std::pow(x, i - 2) : 0.0;
        }
    };
    using K = PoleAtom::Kind;
    for (K k1 : {K::P, K::D, K::DD})
        for (K k2 : {K::P, K::D, K::DD}) {
            cplx s = 0.0;
            for (int i = 0; i < 400; ++i) s += std::conj(v(k1, std::conj(a), i)) * v(k2, b, i);
            EXPECT_LT(std::abs(atom_gram(k1, a, k2, b) - s), 1e-12 * std::abs(s));
        }
}

TEST(Gram, SeriesMatchesClosedForm) {
    for (long p : {2L, 3L}) {
        const auto g = gram_zeta(p, -5, 5, 1e-13);
        EXPECT_LT(g.max_diff, 1e-10);
        EXPECT_LT(g.max_tail_bound, 1e-12);
        EXPECT_NEAR(std::abs(g.closed_form(0, 0) - 1.0 / std::log(double(p))), 0.0, 1e-15);
        Eigen::SelfAdjointEigenSolver<DenseMatrix> es(g.closed_form);
        EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
    }
}

TEST(Gram, WeightIntegralAgainstNumericQuadrature) {
    using boost::math::quadrature::gauss_kronrod;
    for (long p : {2L, 5L})
        for (double w : {0.0, 1.0, 2 * pi, -6 * pi, 31.4}) {
            const double re = gauss_kronrod<double, 61>::integrate([&](double x) { return std::pow(p, 1 - x) * std::cos(w * x); }, 0.0, 1.0);
            const double im = gauss_kronrod<double, 61>::integrate([&](double x) { return std::pow(p, 1 - x) * std::sin(w * x); }, 0.0, 1.0);
            EXPECT_LT(std::abs(weight_fourier_integral(p, w) - cplx(re, im)), 1e-12) << p << " " << w;
        }
}

TEST(Gram, NormalizedSqrtWeightIsTheZetaGram) {
    for (long p : {2L, 3L}) {
        const auto g = sqrt_multiplier_gram(p, -20, 20);
        DenseMatrix closed(41, 41);
        for (int a = 0; a < 41; ++a)
            for (int b = 0; b < 41; ++b) closed(a, b) = gram_zeta_closed(p, a - 20, b - 20);
        EXPECT_LT((g.normalized - closed).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((g.raw - double(p - 1) * closed).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Involutions, IndexMaps) {
    IndexedVector v{-2, {1.0, 2.0, 3.0, 4.0}};  // z^-2 .. z^1
    const auto i = involution_I(v);
    EXPECT_EQ(i.first, -1);
    EXPECT_EQ(i.at(2), cplx(1.0));
    EXPECT_EQ(i.at(-1), cplx(4.0));
    const auto j = involution_J(v);
    EXPECT_EQ(j.first, -2);
    EXPECT_EQ(j.at(1), cplx(1.0));   // z^-2 -> z^1
    EXPECT_EQ(j.at(-2), cplx(4.0));  // z^1 -> z^-2
    const auto jj = involution_J(j);
    EXPECT_EQ(jj.first, v.first);
    EXPECT_EQ(jj.values, v.values);
}
