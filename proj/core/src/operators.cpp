#include "qh/operators.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qh/parallel.hpp"

namespace qh {

namespace {

void require_range(const CoefficientStream& s, int lo, int hi) {
    if (!s.covers(lo) || !s.covers(hi))
        throw Error("range", "stream covers [" + std::to_string(s.k_min) + ", " + std::to_string(s.k_max) +
                                 "], need [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

struct LineFit {
    double slope = 0.0;
    double r2 = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    if (sxx <= 0.0) return f;
    f.slope = sxy / sxx;
    f.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return f;
}

}  // namespace

DenseMatrix hankel_truncation(const CoefficientStream& stream, int n) {
    if (n < 1) throw Error("range", "n must be positive");
    require_range(stream, -(2 * n - 1), -1);
    DenseMatrix H(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) H(i, j) = stream.at(-(i + j + 1));
    return H;
}

DenseMatrix toeplitz_u22(const CoefficientStream& stream, int n) {
    if (n < 1) throw Error("range", "n must be positive");
    require_range(stream, -(n - 1), n - 1);
    DenseMatrix T(n, n);
    for (int m = 0; m < n; ++m)
        for (int j = 0; j < n; ++j) T(m, j) = stream.at(j - m);
    return T;
}

RankOneModel rank_one_model(const FactorSpec& spec, const ResidueOptions& options) {
    PoleTruncation trunc;
    trunc.arch_terms = options.arch_terms;
    trunc.prime_terms = options.prime_terms;
    RankOneModel model;
    for (const auto& pole : product_poles(spec, trunc)) {
        const cplx x = psi_inv(pole.location);
        const auto D = disk_principal_part(pole);
        if (pole.order == 1) {
            model.terms.push_back({D[0], x});
        } else if (pole.order == 2 && !model.finite_rank_extra && std::abs(x) > 0.0) {
            model.finite_rank_extra = FiniteRankExtra{D[0], D[1] / x, x};
        } else {
            model.higher.push_back({x, D});
        }
    }
    std::stable_sort(model.terms.begin(), model.terms.end(),
                     [](const RankOneTerm& a, const RankOneTerm& b) { return std::abs(a.coeff) > std::abs(b.coeff); });
    const auto atoms = spec.flatten();
    if (options.tail_correction && atoms.size() == 1 && !atoms[0].place.is_archimedean() &&
        atoms[0].kind == FactorSpec::Kind::FullRatio) {
        model.tail_prime = atoms[0].place.p;
        model.tail_terms = options.prime_terms;
    }
    return model;
}

RankOneModel rank_one_model_inf_unit(int n_terms) {
    RankOneModel model;
    for (int n = 0; n < n_terms; ++n) {
        const double sign = (n % 2 == 0) ? -1.0 : 1.0;
        const double w = sign * 2.0 *
                         std::exp((2.0 * n + 0.5) * std::log(pi) - std::lgamma(n + 1.0) - std::lgamma(n + 0.5)) /
                         (4.0 * n + 1.0);
        const double x = 1.0 - 4.0 / (4.0 * n + 3.0);
        model.terms.push_back({w * (1.0 - x * x), x});
    }
    std::stable_sort(model.terms.begin(), model.terms.end(),
                     [](const RankOneTerm& a, const RankOneTerm& b) { return std::abs(a.coeff) > std::abs(b.coeff); });
    return model;
}

DenseMatrix rank_one_materialize(const RankOneModel& model, int n) {
    if (n < 1) throw Error("range", "n must be positive");
    const int T = static_cast<int>(model.terms.size());
    // sum_t c_t xi_t eta_t^*, xi_t(i) = x_t^i, eta_t^*(j) = x_t^j
    DenseMatrix Xi(n, T), EtaH(T, n);
    parallel_for(T, [&](int t) {
        const cplx x = model.terms[t].pole;
        cplx pw = 1.0;
        for (int i = 0; i < n; ++i) {
            Xi(i, t) = model.terms[t].coeff * pw;
            EtaH(t, i) = pw;
            pw *= x;
        }
    });
    DenseMatrix M = T > 0 ? DenseMatrix(Xi * EtaH) : DenseMatrix::Zero(n, n);
    if (model.finite_rank_extra) {
        const auto& e = *model.finite_rank_extra;
        Eigen::VectorXcd xi(n), dxi(n);
        cplx pw = 1.0;
        for (int i = 0; i < n; ++i) {
            xi(i) = pw;
            dxi(i) = static_cast<double>(i) * pw;
            pw *= e.x;
        }
        // alpha x^{i+j} + beta (i x^i x^j + x^i j x^j)
        M += e.alpha * xi * xi.transpose() + e.beta * (dxi * xi.transpose() + xi * dxi.transpose());
    }
    for (const auto& h : model.higher) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int k = i + j + 1;
                cplx s = 0.0;
                for (std::size_t r = 1; r <= h.D.size() && static_cast<int>(r) <= k; ++r)
                    s += h.D[r - 1] * binom(k - 1, static_cast<int>(r) - 1) * std::pow(h.x, k - static_cast<int>(r));
                M(i, j) += s;
            }
    }
    if (model.tail_prime > 0) {
        std::vector<cplx> rem(static_cast<std::size_t>(2 * n));
        for (int k = 1; k < 2 * n; ++k) rem[k] = prime_series_tail(model.tail_prime, model.tail_terms, k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(i, j) += rem[i + j + 1];
    }
    return M;
}

double truncated_norm_sq(cplx x, int n) {
    const double r2 = std::norm(x);
    if (r2 == 1.0) return n;
    return (1.0 - std::pow(r2, n)) / (1.0 - r2);
}

SpectralProfile make_profile(std::vector<double> sigma, int truncation_size, int rows, int cols) {
    std::sort(sigma.begin(), sigma.end(), std::greater<>());
    SpectralProfile prof;
    prof.truncation_size = truncation_size;
    prof.singular_values = sigma;
    if (sigma.empty() || sigma[0] <= 0.0) return prof;
    const double floor = std::max(rows, cols) * std::numeric_limits<double>::epsilon() * sigma[0];
    int nonzero = 0;
    while (nonzero < static_cast<int>(sigma.size()) && sigma[nonzero] > floor) ++nonzero;
    prof.numerical_rank = nonzero;
    const int m = std::min(nonzero, std::max(3, static_cast<int>(0.75 * nonzero)));
    if (m < 3) return prof;
    std::vector<double> sq(m), lk(m), ls(m);
    for (int k = 1; k <= m; ++k) {
        sq[k - 1] = std::sqrt(static_cast<double>(k));
        lk[k - 1] = std::log(static_cast<double>(k));
        ls[k - 1] = std::log(sigma[k - 1]);
    }
    const LineFit fs = fit_line(sq, ls);
    const LineFit fp = fit_line(lk, ls);
    prof.sqrt_fit = {DecayFit::Model::StretchedExp, -fs.slope, fs.r2, m};
    prof.power_fit = {DecayFit::Model::PowerLaw, -fp.slope, fp.r2, m};
    prof.fitted_decay = fs.r2 > fp.r2 ? prof.sqrt_fit : prof.power_fit;
    return prof;
}

SpectralProfile singular_values(const DenseMatrix& m) {
    if (!m.allFinite()) throw Error("domain", "matrix has non-finite entries");
    Eigen::BDCSVD<DenseMatrix> svd(m);
    if (svd.info() != Eigen::Success) throw Error("svd", "singular value decomposition did not converge");
    const auto& s = svd.singularValues();
    std::vector<double> sigma(s.data(), s.data() + s.size());
    return make_profile(std::move(sigma), static_cast<int>(std::min(m.rows(), m.cols())), static_cast<int>(m.rows()),
                        static_cast<int>(m.cols()));
}

cplx gram_zeta_closed(long p, int m, int n) {
    const double L = std::log(static_cast<double>(p));
    return 1.0 / cplx(L, 2.0 * pi * (m - n));
}

GramComparison gram_zeta(long p, int n_min, int n_max, double tolerance) {
    if (n_min > n_max) throw Error("range", "empty index range");
    const double L = std::log(static_cast<double>(p));
    const int size = n_max - n_min + 1;
    auto c = [&](int n) { return std::pow(2.0, 1.5) * std::sqrt(L) / cplx(4.0 * pi * n, 3.0 * L); };
    GramComparison g;
    g.series = DenseMatrix(size, size);
    g.closed_form = DenseMatrix(size, size);
    std::vector<double> bound(static_cast<std::size_t>(size * size));
    std::vector<long> terms(static_cast<std::size_t>(size * size));
    // upper triangle by series, the rest by Hermitian symmetry
    parallel_for(size, [&](int a) {
        for (int b = a; b < size; ++b) {
            const int m = n_min + a, n = n_min + b;
            const cplx r = std::conj(x_prime(p, m)) * x_prime(p, n);
            const cplx pref = std::conj(c(m)) * c(n);
            const double ar = std::abs(r);
            const double scale = std::abs(pref) / (1.0 - ar);
            // first K with |pref| |r|^K / (1 - |r|) below tolerance
            const long K = std::max(1L, static_cast<long>(std::ceil(std::log(tolerance / scale) / std::log(ar))));
            cplx s = 0.0, pw = 1.0;
            for (long k = 0; k < K; ++k) {
                if ((k & 255) == 0) pw = std::pow(r, static_cast<double>(k));
                s += pw;
                pw *= r;
            }
            g.series(a, b) = pref * s;
            g.series(b, a) = std::conj(g.series(a, b));
            const double tb = scale * std::pow(ar, static_cast<double>(K));
            bound[a * size + b] = bound[b * size + a] = tb;
            terms[a * size + b] = terms[b * size + a] = K;
        }
    });
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) {
            g.closed_form(a, b) = gram_zeta_closed(p, n_min + a, n_min + b);
            g.max_diff = std::max(g.max_diff, std::abs(g.series(a, b) - g.closed_form(a, b)));
            g.max_tail_bound = std::max(g.max_tail_bound, bound[a * size + b]);
            g.max_terms = std::max(g.max_terms, terms[a * size + b]);
        }
    return g;
}

cplx weight_fourier_integral(long p, double omega) {
    const double L = std::log(static_cast<double>(p));
    if (omega == 0.0) return (static_cast<double>(p) - 1.0) / L;
    return (std::polar(1.0, omega) - static_cast<double>(p)) / cplx(-L, omega);
}

SqrtWeightGram sqrt_multiplier_gram(long p, int n_min, int n_max) {
    if (n_min > n_max) throw Error("range", "empty index range");
    const int size = n_max - n_min + 1;
    SqrtWeightGram g{DenseMatrix(size, size), DenseMatrix(size, size)};
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) {
            // <B delta_m, B delta_n> = \int p^{1-x} e^{2 pi i (n - m) x} dx
            const cplx v = weight_fourier_integral(p, 2.0 * pi * (b - a));
            g.raw(a, b) = v;
            g.normalized(a, b) = v / (static_cast<double>(p) - 1.0);
        }
    return g;
}

cplx IndexedVector::at(int k) const {
    if (k < first || k > last()) return 0.0;
    return values[static_cast<std::size_t>(k - first)];
}

IndexedVector involution_I(const IndexedVector& v) {
    IndexedVector r;
    r.first = -v.last();
    r.values.assign(v.values.rbegin(), v.values.rend());
    return r;
}

IndexedVector involution_J(const IndexedVector& v) {
    IndexedVector r;
    r.first = -v.last() - 1;
    r.values.assign(v.values.rbegin(), v.values.rend());
    return r;
}

}  // namespace qh
