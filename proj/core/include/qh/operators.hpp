#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "qh/fourier.hpp"

namespace qh {

// Basis conventions, fixed for the whole library:
//   domain of the Hankel block  span{z^j,      j >= 0}   (the Hardy side, P L^2)
//   range of the Hankel block   span{z^{-i-1}, i >= 0}   ((1-P) L^2), u22 acts here
// so (1-P)uP has entry (i, j) = c_{-(i+j+1)} and u22 has entry (m, j) = c_{j-m}.
using DenseMatrix = Eigen::MatrixXcd;

DenseMatrix hankel_truncation(const CoefficientStream& stream, int n);
DenseMatrix toeplitz_u22(const CoefficientStream& stream, int n);

// (1-P) f_x P = |xi_x><eta_x| with xi_x(i) = x^i on the range side, eta_x(j) = conj(x)^j on
// the domain side, so a term c |xi_x><eta_x| contributes c x^{i+j} to entry (i, j).
struct RankOneTerm {
    cplx coeff;
    cplx pole;
};

// Double pole at x: alpha (1-P)f_x P + x beta (1-P)f_x^2 P, entry alpha x^{i+j} + beta (i+j) x^{i+j}.
struct FiniteRankExtra {
    cplx alpha;
    cplx beta;
    cplx x;
};

// Pole of order >= 2 not covered by finite_rank_extra: a_{-k} += sum_i D_i C(k-1, i-1) x^{k-i}.
struct HigherPole {
    cplx x;
    std::vector<cplx> D;
};

struct RankOneModel {
    std::vector<RankOneTerm> terms;  // sorted by |coeff| descending
    std::optional<FiniteRankExtra> finite_rank_extra;
    std::vector<HigherPole> higher;
    // closed-form remainder of a single-prime series beyond |n| > tail_terms (0: none)
    long tail_prime = 0;
    int tail_terms = 0;
};

RankOneModel rank_one_model(const FactorSpec& spec, const ResidueOptions& options = {});
// rho_inf model from unit-vector weights w_n = (-1)^{n+1} 2 pi^{2n+1/2} / ((4n+1) n! Gamma(n+1/2))
// at x_n = 1 - 4/(4n+3); the unnormalized coefficient is w_n (1 - x_n^2).
RankOneModel rank_one_model_inf_unit(int n_terms);
DenseMatrix rank_one_materialize(const RankOneModel& model, int n);
// sum_{i<n} |x|^{2i}
double truncated_norm_sq(cplx x, int n);

struct DecayFit {
    enum class Model { PowerLaw, StretchedExp };
    Model model = Model::PowerLaw;
    double parameter = 0.0;  // alpha for mu_k ~ k^{-alpha}, c for mu_k ~ exp(-c sqrt k)
    double r_squared = 0.0;
    int points = 0;
};

struct SpectralProfile {
    std::vector<double> singular_values;  // descending
    int truncation_size = 0;
    DecayFit fitted_decay;  // the better of the two fits below
    DecayFit power_fit;
    DecayFit sqrt_fit;
    int numerical_rank = 0;  // sigma > max(rows, cols) eps sigma_max
};

SpectralProfile singular_values(const DenseMatrix& m);
// Fits on the top 75% of the values above the numerical floor.
SpectralProfile make_profile(std::vector<double> sigma, int truncation_size, int rows, int cols);

struct GramComparison {
    DenseMatrix series;
    DenseMatrix closed_form;
    double max_diff = 0.0;
    double max_tail_bound = 0.0;  // geometric bound on the omitted series terms
    long max_terms = 0;
};

// <zeta_m|zeta_n> for n_min <= m, n <= n_max, with zeta_n(k) = 2^{3/2} L^{1/2} x_p(n)^k /
// (4 pi n + 3 i L); closed form 1/(2 pi i (m - n) + L).
GramComparison gram_zeta(long p, int n_min, int n_max, double tolerance = 1e-12);
cplx gram_zeta_closed(long p, int m, int n);

// \int_0^1 p^{1-x} e^{i omega x} dx = (e^{i omega} - p) / (i omega - log p)
cplx weight_fourier_integral(long p, double omega);

struct SqrtWeightGram {
    DenseMatrix raw;         // weight p^{1-x}
    DenseMatrix normalized;  // weight p^{1-x} / (p - 1)
};
// <B delta_m, B delta_n> with B multiplication by the square root of the weight, delta_n = e^{2 pi i n x}.
SqrtWeightGram sqrt_multiplier_gram(long p, int n_min, int n_max);

// Coefficient vector indexed from `first`: values[i] multiplies z^{first + i}.
struct IndexedVector {
    int first = 0;
    std::vector<cplx> values;
    cplx at(int k) const;
    int last() const { return first + static_cast<int>(values.size()) - 1; }
};

// I: index negation k -> -k.  J f(z) = z^{-1} f(z^{-1}): coefficient k moves to -k-1.
IndexedVector involution_I(const IndexedVector& v);
IndexedVector involution_J(const IndexedVector& v);

}  // namespace qh
