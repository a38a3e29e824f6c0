#include "qh/sonin.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace qh {

namespace {

bool contains(const std::vector<Place>& s, const Place& v) { return std::find(s.begin(), s.end(), v) != s.end(); }

void require_archimedean(const std::vector<Place>& places) {
    if (!contains(places, Place::archimedean())) throw Error("domain", "place set must contain the archimedean place");
}

std::vector<long> primes_in(const std::vector<Place>& places) {
    std::vector<long> out;
    for (const auto& v : places)
        if (!v.is_archimedean()) out.push_back(v.p);
    std::sort(out.begin(), out.end());
    return out;
}

// prod_p (1 - p^{-z}) on z = 1/2 + is as sum_S sign_S n_S^{-1/2} e^{-is log n_S}
struct DirichletTerm {
    double sign, log_n;
};

std::vector<DirichletTerm> expand(const std::vector<long>& primes) {
    std::vector<DirichletTerm> out;
    const int nsub = 1 << primes.size();
    for (int mask = 0; mask < nsub; ++mask) {
        double n = 1.0, sign = 1.0;
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (mask & (1 << i)) {
                n *= static_cast<double>(primes[i]);
                sign = -sign;
            }
        out.push_back({sign, std::log(n)});
    }
    return out;
}

CoefficientStream stream_from(const LineCoefficients& lc, int k_min, int k_max, const std::string& detail) {
    CoefficientStream s;
    s.spec = FactorSpec::unit();
    s.method = CoefficientStream::Method::Quadrature;
    s.detail = detail;
    s.k_min = k_min;
    s.k_max = k_max;
    s.values = lc.values;
    s.error = lc.error;
    return s;
}

// Coefficients of |D_F|^2, a sum of periodic terms on the line.
CoefficientStream modulus_coeffs(const std::vector<long>& primes, int K, const LineQuadratureOptions& options) {
    const auto terms = expand(primes);
    LineSymbol sym;
    double constant = 0.0, rate = 1.0;
    for (const auto& a : terms)
        for (const auto& b : terms) {
            const double c = a.sign * b.sign * std::exp(-0.5 * (a.log_n + b.log_n));
            const double L = b.log_n - a.log_n;
            if (std::abs(L) < 1e-12) {
                constant += c;
                continue;
            }
            sym.pieces.push_back({[c, L](double s) { return c * std::polar(1.0, s * L); }, 2.0 * pi / std::abs(L)});
            rate = std::max(rate, std::abs(L));
        }
    sym.pieces.push_back({[constant](double) { return cplx(constant, 0.0); }, 1.0});
    const auto pieces = sym.pieces;
    sym.f = [pieces](double s) {
        cplx v = 0.0;
        for (const auto& pc : pieces) v += pc.f(s);
        return v;
    };
    sym.rate = [rate](double) { return rate; };
    sym.tail = LineSymbol::Tail::Periodic;
    return stream_from(line_coefficients(sym, -K, K, options), -K, K, "basis gram line");
}

}  // namespace

FactorSpec place_set_spec(const std::vector<Place>& places) {
    if (places.empty()) throw Error("domain", "empty place set");
    std::vector<FactorSpec> members;
    for (const auto& v : places) members.push_back(FactorSpec::ratio(v));
    return members.size() == 1 ? members[0] : FactorSpec::product(members);
}

CoefficientStream two_sided_stream(const FactorSpec& spec, int K, const LineQuadratureOptions& options) {
    return line_quadrature_coeffs(spec, -K, K, options);
}

SoninBasis sonin_basis(const std::vector<Place>& places, int n_max, int rows_factor,
                       const LineQuadratureOptions& options) {
    require_archimedean(places);
    if (n_max < 1 || n_max > 512) throw Error("resource", "truncation must lie in [1, 512]");
    if (rows_factor < 1 || rows_factor > 8) throw Error("domain", "rows factor must lie in [1, 8]");
    const auto primes = primes_in(places);
    const auto terms = expand(primes);

    // w = rho_inf prod_p (1 - p^{z-1}); on the line p^{z-1} = p^{-1/2} e^{is log p}
    const LineSymbol arch = line_symbol(FactorSpec::ratio(Place::archimedean()));
    double spread = 0.0, size = 0.0;
    for (const auto& t : terms) {
        spread = std::max(spread, t.log_n);
        size += std::exp(-0.5 * t.log_n);
    }
    LineSymbol sym;
    const auto f_arch = arch.f;
    sym.f = [f_arch, terms](double s) {
        cplx n = 0.0;
        for (const auto& t : terms) n += t.sign * std::exp(-0.5 * t.log_n) * std::polar(1.0, s * t.log_n);
        return f_arch(s) * n;
    };
    const auto rate_arch = arch.rate;
    sym.rate = [rate_arch, spread](double s) { return rate_arch(s) + spread; };
    sym.tail = LineSymbol::Tail::Decaying;
    const auto tail_arch = arch.tail_estimate;
    sym.tail_estimate = [tail_arch, size](double S) { return size * tail_arch(S); };

    SoninBasis b;
    b.place_set = places;
    b.n_max = n_max;
    b.rows_factor = rows_factor;
    const int k_min = -(rows_factor * n_max - 1), k_max = n_max - 1;
    b.symbol = stream_from(line_coefficients(sym, k_min, k_max, options), k_min, k_max, "sonin symbol line");
    if (primes.empty()) {
        b.gram = DenseMatrix::Identity(n_max, n_max);
    } else {
        const auto q = modulus_coeffs(primes, n_max - 1, options);
        b.gram = DenseMatrix(n_max, n_max);
        for (int l = 0; l < n_max; ++l)
            for (int j = 0; j < n_max; ++j) b.gram(l, j) = q.at(j - l);
    }
    return b;
}

SoninReport sonin_kernel(const SoninBasis& basis, int n, double eps) {
    if (n < 1 || n > basis.n_max) throw Error("resource", "truncation exceeds the basis size");
    if (!(eps > 0.0)) throw Error("domain", "eps must be positive");
    const int rows = basis.rows_factor * n;
    DenseMatrix T(rows, n);
    for (int m = 0; m < rows; ++m)
        for (int j = 0; j < n; ++j) T(m, j) = basis.symbol.at(j - m);

    // T G^{-1/2}: singular values in the Gram norm of the domain
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(basis.gram.topLeftCorner(n, n));
    if (es.info() != Eigen::Success || es.eigenvalues()(0) <= 0.0)
        throw Error("svd", "basis Gram is not positive definite");
    const Eigen::VectorXd inv_root = es.eigenvalues().cwiseSqrt().cwiseInverse();
    const DenseMatrix W = es.eigenvectors() * inv_root.asDiagonal() * es.eigenvectors().adjoint();
    Eigen::BDCSVD<DenseMatrix> svd(T * W, Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw Error("svd", "singular value decomposition did not converge");
    const auto& s = svd.singularValues();

    SoninReport r;
    r.place_set = basis.place_set;
    r.truncation = n;
    r.rows = rows;
    r.epsilon = eps;
    r.min_sigma = s(n - 1);
    int dim = 0;
    while (dim < n && s(n - 1 - dim) < eps) ++dim;
    r.kernel_basis = DenseMatrix(n, dim);
    for (int i = 0; i < dim; ++i) {
        r.kernel_basis.col(i) = W * svd.matrixV().col(n - 1 - i);
        r.kernel_sigma.push_back(s(n - 1 - i));
    }
    r.dimension_curve.push_back({n, dim});
    return r;
}

SoninReport sonin_kernel(const std::vector<Place>& places, int n, double eps) {
    return sonin_kernel(sonin_basis(places, n), n, eps);
}

SoninReport sonin_sweep(const std::vector<Place>& places, const std::vector<int>& sweep, double eps) {
    require_archimedean(places);
    if (sweep.empty()) throw Error("domain", "empty sweep");
    const int nmax = *std::max_element(sweep.begin(), sweep.end());
    const SoninBasis basis = sonin_basis(places, nmax);
    std::vector<int> sorted(sweep);
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<int, int>> curve;
    for (int n : sorted) {
        if (n == nmax) continue;
        curve.push_back(sonin_kernel(basis, n, eps).dimension_curve[0]);
    }
    SoninReport r = sonin_kernel(basis, nmax, eps);
    curve.push_back(r.dimension_curve[0]);
    r.dimension_curve = curve;
    return r;
}

CoefficientStream d_multiplier_coeffs(const std::vector<Place>& F, const std::vector<Place>& F_prime, int k_min,
                                      int k_max, const LineQuadratureOptions& options) {
    require_archimedean(F);
    require_archimedean(F_prime);
    for (const auto& v : F)
        if (!contains(F_prime, v)) throw Error("domain", "F is not contained in F'");
    std::vector<long> extra;
    for (const auto& v : F_prime)
        if (!contains(F, v)) extra.push_back(v.p);
    if (extra.empty()) throw Error("domain", "F' must be strictly larger than F");
    std::sort(extra.begin(), extra.end());

    LineSymbol sym;
    double rate = 1.0;
    for (const auto& t : expand(extra)) {
        if (t.log_n == 0.0) {
            sym.pieces.push_back({[](double) { return cplx(1.0, 0.0); }, 1.0});
        } else {
            const double sign = t.sign, L = t.log_n;
            sym.pieces.push_back({[sign, L](double s) { return sign * std::exp(-L * cplx(0.5, s)); }, 2.0 * pi / L});
            rate = std::max(rate, L);
        }
    }
    const auto pieces = sym.pieces;
    sym.f = [pieces](double s) {
        cplx v = 0.0;
        for (const auto& pc : pieces) v += pc.f(s);
        return v;
    };
    sym.rate = [rate](double) { return rate; };
    sym.tail = LineSymbol::Tail::Periodic;
    return stream_from(line_coefficients(sym, k_min, k_max, options), k_min, k_max, "d-multiplier line");
}

MapCheck inductive_map_check(const std::vector<Place>& F, const std::vector<Place>& F_prime, const SoninReport& report,
                             int count) {
    if (report.place_set != F) throw Error("domain", "report was computed for a different place set");
    const int n = report.truncation;
    const int dim = std::min<int>(count, static_cast<int>(report.kernel_basis.cols()));
    MapCheck out;
    const auto d = d_multiplier_coeffs(F, F_prime, 1, std::max(1, n - 1));
    for (int k = 1; k < n; ++k) out.d_leakage.push_back(std::abs(d.at(k)));

    const int factor = std::max(1, report.rows / n);
    const SoninBasis target = sonin_basis(F_prime, n, factor);
    const int rows = factor * n;
    DenseMatrix T(rows, n);
    for (int m = 0; m < rows; ++m)
        for (int j = 0; j < n; ++j) T(m, j) = target.symbol.at(j - m);

    const DenseMatrix Xi = report.kernel_basis.leftCols(dim);
    for (int c = 0; c < dim; ++c) {
        const Eigen::VectorXcd xi = Xi.col(c);
        const double norm = std::sqrt(std::max(0.0, (xi.adjoint() * target.gram * xi)(0, 0).real()));
        if (norm < 1e-12) throw Error("domain", "degenerate image D xi");
        out.image_norms.push_back(norm);
        out.residuals.push_back((T * xi).norm() / norm);
    }
    if (dim > 0) {
        Eigen::SelfAdjointEigenSolver<DenseMatrix> es(Xi.adjoint() * target.gram * Xi);
        out.gram_min_eigenvalue = es.eigenvalues()(0);
    }
    return out;
}

}  // namespace qh
