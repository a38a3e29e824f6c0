#include "qh/blaschke.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "qh/parallel.hpp"

namespace qh {

namespace {

cplx factor(cplx a, cplx v) { return std::abs(a) / a * (a - v) / (1.0 - std::conj(a) * v); }

// Bound on sum_{|n| > N} |1 - b_{a_n}(v)|.  With 1 - b_a(v) = (1 - |a|)(a + |a| v) / (a (1 - conj(a) v)),
// |1 - a_n| <= L / (pi N) and |a/|a| - 1| <= 2 |1 - a| for |n| > N, each factor is at most
// (1 - |a_n|)(|1 + v| + e)/(|1 - v| - e) with e = 2 L / (pi N).
double tail_sum(long p, cplx v, int n_trunc) {
    const double L = std::log(static_cast<double>(p));
    const double N = n_trunc;
    // 1 - |a|^2 = 8 L^2 / (16 pi^2 n^2 + 9 L^2) <= L^2 / (2 pi^2 n^2), and
    // 1 - |a| = (1 - |a|^2)/(1 + |a|) <= (1 - |a|^2)/(2 - delta) for |n| > N
    const double delta = 8.0 * L * L / (16.0 * pi * pi * (N + 1) * (N + 1) + 9.0 * L * L);
    const double mass = L * L / (pi * pi * N * (2.0 - delta));
    const double e = 2.0 * L / (pi * N);
    const double r = std::abs(v);
    double ratio = (1.0 + r) / (1.0 - r);
    if (std::abs(1.0 - v) > e) ratio = std::min(ratio, (std::abs(1.0 + v) + e) / (std::abs(1.0 - v) - e));
    return ratio * mass;
}

cplx poly_eval(const std::vector<cplx>& h, cplx v) {
    cplx s = 0.0;
    for (auto it = h.rbegin(); it != h.rend(); ++it) s = s * v + *it;
    return s;
}

}  // namespace

BlaschkeValue blaschke(long p, cplx v, int n_trunc) {
    if (!is_prime(p)) throw Error("parse", "not a prime: " + std::to_string(p));
    if (std::abs(v) > 1.0) throw Error("domain", "|v| must not exceed 1");
    if (n_trunc < 1) throw Error("domain", "n_trunc must be positive");
    cplx b = 1.0;
    for (long n = -n_trunc; n <= n_trunc; ++n) {
        const cplx a = x_prime(p, n);
        if (a == v) return {0.0, 0.0};
        b *= factor(a, v);
    }
    BlaschkeValue out{b, 0.0};
    out.tail_bound = std::abs(v) < 1.0 ? std::expm1(tail_sum(p, v, n_trunc)) : std::numeric_limits<double>::infinity();
    return out;
}

cplx iota(long p, cplx v) {
    if (v == 1.0) throw Error("infinity", "iota is singular at v = 1");
    return -std::exp(std::log(static_cast<double>(p)) * (v + 1.0) / (v - 1.0));
}

std::vector<cplx> blaschke_taylor(long p, int n_trunc, int degree) {
    std::vector<cplx> c(static_cast<std::size_t>(degree));
    if (degree == 0) return c;
    c[0] = 1.0;
    std::vector<cplx> g(c.size());
    for (long n = -n_trunc; n <= n_trunc; ++n) {
        const cplx a = x_prime(p, n);
        const cplx ph = std::abs(a) / a;
        // multiply by ph (a - v), then divide by (1 - conj(a) v)
        for (int k = degree - 1; k >= 0; --k) g[k] = ph * (a * c[k] - (k > 0 ? c[k - 1] : 0.0));
        cplx prev = 0.0;
        for (int k = 0; k < degree; ++k) {
            c[k] = g[k] + std::conj(a) * prev;
            prev = c[k];
        }
    }
    return c;
}

BlaschkeIdentity blaschke_identity(long p, int n_trunc, int samples, std::uint64_t seed, double radius) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<cplx> pts(static_cast<std::size_t>(samples));
    for (auto& v : pts) v = std::polar(radius * std::sqrt(U(rng)), 2.0 * pi * U(rng));
    const FactorSpec spec = FactorSpec::prime(p);
    std::vector<double> res(pts.size()), bnd(pts.size());
    parallel_for(samples, [&](int i) {
        const cplx v = pts[i];
        const BlaschkeValue b = blaschke(p, v, n_trunc);
        const cplx io = iota(p, v);
        res[i] = std::abs(kappa(spec, v) * b.value - io);
        // |kappa B_N| <= |iota| / (1 - S) and |1 - prod_tail b| <= e^S - 1
        const double S = tail_sum(p, v, n_trunc);
        bnd[i] = std::abs(io) * std::expm1(S) / (1.0 - S);
    });
    BlaschkeIdentity out;
    out.samples = samples;
    for (int i = 0; i < samples; ++i) {
        out.max_residual = std::max(out.max_residual, res[i]);
        out.max_bound = std::max(out.max_bound, bnd[i]);
        if (!(res[i] < bnd[i])) out.below_bound = false;
    }
    return out;
}

KernelMembership kernel_membership(long p, int n, const std::vector<std::vector<cplx>>& polys, int blaschke_terms,
                                   int symbol_terms) {
    if (n < 1) throw Error("range", "n must be positive");
    ResidueOptions ro;
    ro.prime_terms = symbol_terms;
    ro.tail_correction = false;
    const RankOneModel model = rank_one_model(FactorSpec::prime(p), ro);
    const int T = static_cast<int>(model.terms.size());

    // B_N at every symbol pole; zero at its own zeros up to rounding
    std::vector<cplx> Bx(static_cast<std::size_t>(T));
    parallel_for(T, [&](int t) {
        const cplx x = model.terms[t].pole;
        cplx b = 1.0;
        for (long m = -blaschke_terms; m <= blaschke_terms; ++m) b *= factor(x_prime(p, m), x);
        Bx[t] = b;
    });

    const double L = std::log(static_cast<double>(p));
    const double R = (1.0 - 1.0 / p) / L;
    const auto stream = residue_coeffs(FactorSpec::prime(p), 2 * n);
    const DenseMatrix H = hankel_truncation(stream, n);
    const auto B = blaschke_taylor(p, blaschke_terms, n);

    KernelMembership out;
    out.blaschke_terms = blaschke_terms;
    out.symbol_terms = symbol_terms;
    for (const auto& h : polys) {
        double hnorm = 0.0, h1 = 0.0;
        for (const auto& c : h) {
            hnorm += std::norm(c);
            h1 += std::abs(c);
        }
        hnorm = std::sqrt(hnorm);
        if (hnorm == 0.0) throw Error("domain", "zero polynomial");
        Eigen::VectorXcd y = Eigen::VectorXcd::Zero(n);
        for (int t = 0; t < T; ++t) {
            const cplx x = model.terms[t].pole;
            const cplx w = model.terms[t].coeff * Bx[t] * poly_eval(h, x);
            cplx pw = 1.0;
            for (int i = 0; i < n; ++i) {
                y(i) += w * pw;
                pw *= x;
            }
        }
        out.residuals.push_back(y.norm() / hnorm);
        // |c_m| <= 8 R L^2 / (16 pi^2 m^2), |f| <= sum |h_j| on the disk, ||xi||_n <= sqrt(n)
        out.tail_bounds.push_back(2.0 * 8.0 * R * L * L / (16.0 * pi * pi * symbol_terms) * h1 * std::sqrt(n) / hnorm);

        Eigen::VectorXcd f = Eigen::VectorXcd::Zero(n);
        for (int k = 0; k < n; ++k)
            for (std::size_t j = 0; j < h.size() && static_cast<int>(j) <= k; ++j) f(k) += h[j] * B[k - j];
        out.coordinate_residuals.push_back((H * f).norm() / f.norm());
    }
    return out;
}

}  // namespace qh
