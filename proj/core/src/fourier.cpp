#include "qh/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "qh/parallel.hpp"

namespace qh {

cplx CoefficientStream::at(int k) const {
    if (!covers(k)) throw Error("range", "coefficient index " + std::to_string(k) + " not in stream");
    return values[static_cast<std::size_t>(k - k_min)];
}

double CoefficientStream::err(int k) const {
    if (!covers(k)) throw Error("range", "coefficient index " + std::to_string(k) + " not in stream");
    return error[static_cast<std::size_t>(k - k_min)];
}

std::string method_name(CoefficientStream::Method m) {
    return m == CoefficientStream::Method::ResidueSeries ? "ResidueSeries" : "Quadrature";
}

namespace {

std::mutex fftw_mutex;

std::vector<cplx> fft_forward(const std::vector<cplx>& in) {
    const int n = static_cast<int>(in.size());
    std::vector<cplx> data(in), out(in.size());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(data.data()),
                                reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

// c_k = e^{-2 pi i k offset / n} F[k mod n] / n
cplx dft_coeff(const std::vector<cplx>& F, double offset, int k) {
    const int n = static_cast<int>(F.size());
    const int idx = ((k % n) + n) % n;
    return std::polar(1.0, -2.0 * pi * k * offset / n) * F[static_cast<std::size_t>(idx)] / static_cast<double>(n);
}

}  // namespace

CoefficientStream quadrature_coeffs(const std::vector<cplx>& samples, const BoundaryGrid& grid, int k_min,
                                    int k_max, const FactorSpec& spec) {
    const int n = grid.size();
    if (static_cast<int>(samples.size()) != n) throw Error("domain", "samples do not match the grid");
    if (k_min > k_max || std::max(std::abs(k_min), std::abs(k_max)) > n / 4)
        throw Error("range", "|k| must not exceed n_points/4");
    const auto F = fft_forward(samples);
    std::vector<cplx> even(static_cast<std::size_t>(n / 2));
    for (int i = 0; i < n / 2; ++i) even[i] = samples[2 * i];
    const auto Fe = fft_forward(even);

    CoefficientStream s;
    s.spec = spec;
    s.method = CoefficientStream::Method::Quadrature;
    s.detail = "dft";
    s.k_min = k_min;
    s.k_max = k_max;
    for (int k = k_min; k <= k_max; ++k) {
        const cplx c = dft_coeff(F, grid.offset(), k);
        const cplx ce = dft_coeff(Fe, grid.offset() / 2.0, k);
        s.values.push_back(c);
        s.error.push_back(std::abs(c - ce));
    }
    return s;
}

CoefficientStream line_quadrature_coeffs(const FactorSpec& spec, int k_min, int k_max,
                                         const LineQuadratureOptions& options) {
    const LineSymbol sym = line_symbol(spec);
    const LineCoefficients lc = line_coefficients(sym, k_min, k_max, options);
    CoefficientStream s;
    s.spec = spec;
    s.method = CoefficientStream::Method::Quadrature;
    s.detail = "line";
    s.k_min = k_min;
    s.k_max = k_max;
    s.values = lc.values;
    s.error = lc.error;
    s.slow_convergence = sym.tail == LineSymbol::Tail::Unresolved;
    return s;
}

std::vector<cplx> disk_principal_part(const ProductPole& pole) {
    const int r = pole.order;
    const cplx d = 4.0 / (2.0 * pole.location - 3.0);  // x0 - 1
    std::vector<cplx> D(static_cast<std::size_t>(r));
    for (int i = 1; i <= r; ++i) {
        cplx s = 0.0;
        for (int j = i; j <= r; ++j) s += pole.laurent[j - 1] * std::pow(-d / 2.0, j) * std::tgamma(j + 1.0) / (std::tgamma(i + 1.0) * std::tgamma(j - i + 1.0));
        D[i - 1] = std::pow(d, i) * s;
    }
    return D;
}

cplx prime_series_tail(long p, int n_terms, int k) {
    const double dp = static_cast<double>(p);
    const double L = std::log(dp);
    const double C = 8.0 * (1.0 - 1.0 / dp) * L;
    const double t = n_terms + 0.5;
    const cplx u = cplx(4.0 * pi * t, -L) / cplx(4.0 * pi * t, 3.0 * L);
    const cplx one_side = C * (1.0 - std::pow(u, k)) / (cplx(0.0, 16.0 * pi * L) * static_cast<double>(k));
    return one_side + std::conj(one_side);
}

CoefficientStream residue_coeffs(const FactorSpec& spec, int k_max, const ResidueOptions& options) {
    if (k_max < 1) throw Error("range", "k_max must be at least 1");
    if (options.prime_terms < 1 || options.arch_terms < 1) throw Error("domain", "n_terms must be at least 1");
    PoleTruncation trunc;
    trunc.arch_terms = options.arch_terms;
    trunc.prime_terms = options.prime_terms;
    const auto poles = product_poles(spec, trunc);

    struct Disk {
        cplx x0;
        std::vector<cplx> D;
    };
    std::vector<Disk> disk(poles.size());
    parallel_for(static_cast<int>(poles.size()), [&](int i) {
        disk[i] = {psi_inv(poles[i].location), disk_principal_part(poles[i])};
    });

    std::vector<cplx> acc(static_cast<std::size_t>(k_max));
    std::vector<double> mag(static_cast<std::size_t>(k_max));
    constexpr int block = 64;
    const int nblocks = (k_max + block - 1) / block;
    parallel_for(nblocks, [&](int b) {
        const int k0 = 1 + b * block;
        const int k1 = std::min(k_max, k0 + block - 1);
        for (const auto& dp : disk) {
            const cplx x = dp.x0;
            if (dp.D.size() == 1) {
                cplx t = dp.D[0] * std::pow(x, k0 - 1);
                for (int k = k0; k <= k1; ++k) {
                    acc[k - 1] += t;
                    mag[k - 1] += std::abs(t);
                    t *= x;
                }
            } else {
                for (int k = k0; k <= k1; ++k) {
                    cplx t = 0.0;
                    for (std::size_t i = 1; i <= dp.D.size(); ++i) {
                        if (static_cast<int>(i) > k) break;
                        // C(k-1, i-1)
                        const double binom = std::exp(std::lgamma(static_cast<double>(k)) - std::lgamma(static_cast<double>(i)) -
                                                      std::lgamma(k - static_cast<double>(i) + 1.0));
                        t += dp.D[i - 1] * binom * std::pow(x, k - static_cast<int>(i));
                    }
                    acc[k - 1] += t;
                    mag[k - 1] += std::abs(t);
                }
            }
        }
    });

    CoefficientStream s;
    s.spec = spec;
    s.method = CoefficientStream::Method::ResidueSeries;
    s.detail = "residue";
    s.k_min = -k_max;
    s.k_max = -1;
    s.values.resize(static_cast<std::size_t>(k_max));
    s.error.resize(static_cast<std::size_t>(k_max));

    const auto atoms = spec.flatten();
    const auto primes = primes_of(spec);
    const bool single_prime = atoms.size() == 1 && primes.size() == 1;
    // remainder estimate for prime series without a closed form: the |n| = N terms
    // decay like n^{-5/2} or slower, so the rest is about N/1.5 of them
    double last_prime = 0.0;
    if (!primes.empty()) {
        for (std::size_t i = 0; i < poles.size(); ++i)
            if (poles[i].location.imag() != 0.0 && std::abs(poles[i].index) == options.prime_terms)
                last_prime += std::abs(disk[i].D[0]);
    }
    const double N = options.prime_terms;

    for (int k = 1; k <= k_max; ++k) {
        cplx v = acc[k - 1];
        double e = 4.0 * std::numeric_limits<double>::epsilon() * mag[k - 1];
        if (single_prime) {
            const long p = primes[0];
            if (options.tail_correction) {
                v += prime_series_tail(p, options.prime_terms, k);
                const double L = std::log(static_cast<double>(p));
                const double C = 8.0 * (1.0 - 1.0 / p) * L;
                const double kr = k * L / (pi * N);
                e += C / (96.0 * pi * pi * N * N * N) * (1.0 + kr * kr);
            } else {
                e += std::abs(prime_series_tail(p, options.prime_terms, k));
            }
        } else if (!primes.empty()) {
            e += last_prime * N / 1.5;
        }
        // stored at index -k
        s.values[static_cast<std::size_t>(k_max - k)] = v;
        s.error[static_cast<std::size_t>(k_max - k)] = e;
    }
    s.slow_convergence = !single_prime && !primes.empty() && last_prime * N / 1.5 > 1e-6;
    return s;
}

CoefficientStream pole_part_coeffs(const FactorSpec& spec, int k_min, int k_max, int truncation,
                                   const BoundaryGrid& grid) {
    const auto primes = primes_of(spec);
    if (primes.empty()) {
        std::vector<cplx> samples(static_cast<std::size_t>(grid.size()));
        parallel_for(grid.size(), [&](int j) {
            const double t = grid.theta(j);
            samples[j] = pole_part(spec, cplx(0.5, -1.0 / std::tan(t / 2.0)), truncation).value;
        });
        auto s = quadrature_coeffs(samples, grid, k_min, k_max, spec);
        s.detail = "pole-part dft";
        return s;
    }
    const LineSymbol sym = pole_part_line_symbol(spec, truncation);
    const LineCoefficients lc = line_coefficients(sym, k_min, k_max);
    CoefficientStream s;
    s.spec = spec;
    s.method = CoefficientStream::Method::Quadrature;
    s.detail = "pole-part line";
    s.k_min = k_min;
    s.k_max = k_max;
    s.values = lc.values;
    s.error = lc.error;
    s.slow_convergence = sym.tail == LineSymbol::Tail::Unresolved;
    return s;
}

StreamComparison compare_streams(const CoefficientStream& a, const CoefficientStream& b) {
    StreamComparison c;
    c.k_min = std::max(a.k_min, b.k_min);
    c.k_max = std::min(a.k_max, b.k_max);
    if (c.k_min > c.k_max) throw Error("range", "streams have disjoint index ranges");
    for (int k = c.k_min; k <= c.k_max; ++k) {
        const double d = std::abs(a.at(k) - b.at(k));
        c.diff.push_back(d);
        if (d > c.max_diff || k == c.k_min) {
            c.max_diff = std::max(c.max_diff, d);
            if (d >= c.max_diff) c.argmax = k;
        }
        if (d > a.err(k) + b.err(k)) c.within_bounds = false;
    }
    return c;
}

}  // namespace qh
