#include "qh/line_quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

#include "qh/parallel.hpp"
#include "qh/poles.hpp"

namespace qh {

namespace {

template <int N>
void full_rule(std::vector<double>& x, std::vector<double>& w) {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& a = G::abscissa();
    const auto& b = G::weights();
    x.clear();
    w.clear();
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] == 0.0) continue;
        x.push_back(-a[i]);
        w.push_back(b[i]);
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        x.push_back(a[i]);
        w.push_back(b[i]);
    }
}

void gauss_rule(int order, std::vector<double>& x, std::vector<double>& w) {
    switch (order) {
        case 8: full_rule<8>(x, w); break;
        case 16: full_rule<16>(x, w); break;
        case 32: full_rule<32>(x, w); break;
        default: throw Error("domain", "panel order must be 8, 16 or 32");
    }
}

struct Rule {
    std::vector<double> s, w;
};

// Panels on [0, S] mirrored to [-S, 0].
Rule build_rule(const std::function<double(double)>& freq, double S, int order, double resolution) {
    std::vector<double> gx, gw;
    gauss_rule(order, gx, gw);
    std::vector<double> edges{0.0};
    while (edges.back() < S) {
        const double a = edges.back();
        const double h = std::min(2.0, 2.0 * pi * order / (resolution * freq(a)));
        edges.push_back(std::min(S, a + h));
    }
    Rule half;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double a = edges[p], b = edges[p + 1];
        for (std::size_t i = 0; i < gx.size(); ++i) {
            half.s.push_back(0.5 * (a + b) + 0.5 * (b - a) * gx[i]);
            half.w.push_back(0.5 * (b - a) * gw[i]);
        }
    }
    Rule r;
    r.s.reserve(2 * half.s.size());
    r.w.reserve(2 * half.s.size());
    for (std::size_t i = half.s.size(); i-- > 0;) {
        r.s.push_back(-half.s[i]);
        r.w.push_back(half.w[i]);
    }
    r.s.insert(r.s.end(), half.s.begin(), half.s.end());
    r.w.insert(r.w.end(), half.w.begin(), half.w.end());
    return r;
}

double theta_of(double s) { return pi + 2.0 * std::atan(s); }

// sum_j amp_j e^{-ik theta_j} for k in [k_min, k_max]
std::vector<cplx> transform(const std::vector<double>& theta, const std::vector<cplx>& amp, int k_min, int k_max) {
    const int nk = k_max - k_min + 1;
    std::vector<cplx> out(static_cast<std::size_t>(nk));
    constexpr int block = 32;
    const int nblocks = (nk + block - 1) / block;
    parallel_for(nblocks, [&](int b) {
        const int k0 = k_min + b * block;
        const int k1 = std::min(k_max, k0 + block - 1);
        std::vector<cplx> acc(static_cast<std::size_t>(k1 - k0 + 1));
        for (std::size_t j = 0; j < theta.size(); ++j) {
            cplx e = std::polar(1.0, -k0 * theta[j]);
            const cplx step = std::polar(1.0, -theta[j]);
            for (int k = k0; k <= k1; ++k) {
                acc[k - k0] += amp[j] * e;
                e *= step;
            }
        }
        for (int k = k0; k <= k1; ++k) out[k - k_min] = acc[k - k0];
    });
    return out;
}

std::vector<cplx> main_integral(const LineSymbol& sym, int k_min, int k_max, double S, int order,
                                double resolution, int& nodes) {
    const double kabs = std::max(std::abs(k_min), std::abs(k_max));
    const auto freq = [&](double s) { return sym.rate(s) + kabs * 2.0 / (1.0 + s * s) + 1.0; };
    const Rule r = build_rule(freq, S, order, resolution);
    nodes = static_cast<int>(r.s.size());
    std::vector<double> theta(r.s.size());
    std::vector<cplx> amp(r.s.size());
    parallel_for(static_cast<int>(r.s.size()), [&](int j) {
        const double s = r.s[j];
        theta[j] = theta_of(s);
        amp[j] = sym.f(s) * r.w[j] / (pi * (1.0 + s * s));
    });
    return transform(theta, amp, k_min, k_max);
}

// Euler-Maclaurin sum of the tail of one periodic piece over s > S and s < -S.
cplx periodic_tail(const PeriodicPiece& piece, double S, int k, const std::vector<double>& gx,
                   const std::vector<double>& gw, int panels) {
    const double T = piece.period;
    const cplx i(0.0, 1.0);
    const double dk = k;

    // s > S: theta(t) close to 2 pi; delta = 2 pi - theta = 2 atan(1/t)
    const auto G_plus = [&](double t) {
        const double delta = 2.0 * std::atan(1.0 / t);
        const double q = 1.0 + t * t;
        const cplx e = std::polar(1.0, dk * delta);  // e^{-ik theta}
        const cplx I = (k == 0) ? cplx(delta / (2.0 * pi), 0.0)
                                : 2.0 * i * std::sin(dk * delta / 2.0) * std::polar(1.0, dk * delta / 2.0) /
                                      (2.0 * pi * i * dk);
        const cplx A = e / (pi * q);
        const cplx dA = e / pi * (-i * dk * (2.0 / q) / q - 2.0 * t / (q * q));
        return I / T + A / 2.0 - (T / 12.0) * dA;
    };
    // s < -S, written as u = -s > S: theta(-u) = 2 atan(1/u) = delta
    const auto G_minus = [&](double u) {
        const double delta = 2.0 * std::atan(1.0 / u);
        const double q = 1.0 + u * u;
        const cplx e = std::polar(1.0, -dk * delta);
        const cplx I = (k == 0) ? cplx(delta / (2.0 * pi), 0.0)
                                : 2.0 * i * std::sin(dk * delta / 2.0) * std::polar(1.0, -dk * delta / 2.0) /
                                      (2.0 * pi * i * dk);
        const cplx B = e / (pi * q);
        const cplx dB = e / pi * (-i * dk * (-2.0 / q) / q - 2.0 * u / (q * q));
        return I / T + B / 2.0 - (T / 12.0) * dB;
    };

    cplx total = 0.0;
    const double h = T / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = S + p * h;
        for (std::size_t j = 0; j < gx.size(); ++j) {
            const double t = a + 0.5 * h * (1.0 + gx[j]);
            const double wt = 0.5 * h * gw[j];
            total += wt * (piece.f(t) * G_plus(t) + piece.f(-t) * G_minus(t));
        }
    }
    return total;
}

double rate_archimedean_like(double s, double scale, double m) {
    const double a = std::abs(s);
    return std::abs(std::log((a + 1.0) / (2.0 * pi * scale))) / m + 6.0 / (1.0 + s * s) + 1.0;
}

// rho_p(1/2 + is) = (1 - q e^{isL}) sum_m q^m e^{-imsL} with q = p^{-1/2}: the harmonic m L
// has size q^m, below 1e-16 once m L > 2 log(1e16), whatever p is.
double rate_prime(long) { return 4.0 * 16.0 * std::log(10.0); }

std::function<double(double)> spec_rate(const FactorSpec& spec) {
    const auto atoms = spec.flatten();
    return [atoms](double s) {
        double r = 0.0;
        for (const auto& a : atoms) {
            if (a.kind == FactorSpec::Kind::FullRatio)
                r += a.place.is_archimedean() ? rate_archimedean_like(s, 1.0, 1.0) : rate_prime(a.place.p);
            else
                r += rate_archimedean_like(s, a.m, a.m);
        }
        return r;
    };
}

}  // namespace

LineSymbol line_symbol(const FactorSpec& spec) {
    LineSymbol sym;
    sym.f = [spec](double s) { return rho(spec, cplx(0.5, s)); };
    sym.rate = spec_rate(spec);
    const auto primes = primes_of(spec);
    const auto atoms = spec.flatten();
    if (atoms.empty()) {
        sym.tail = LineSymbol::Tail::Periodic;
        sym.pieces = {{[](double) { return cplx(1.0, 0.0); }, 1.0}};
    } else if (has_archimedean_part(spec)) {
        // integration by parts against the growing phase of the archimedean factor
        sym.tail = LineSymbol::Tail::Decaying;
        const auto rate = sym.rate;
        sym.tail_estimate = [rate](double S) { return 2.0 / (pi * S * S * std::max(0.1, rate(S) - 1.0)); };
    } else if (primes.size() == 1) {
        sym.tail = LineSymbol::Tail::Periodic;
        sym.pieces = {{sym.f, 2.0 * pi / std::log(static_cast<double>(primes[0]))}};
    } else {
        sym.tail = LineSymbol::Tail::Unresolved;
        sym.tail_estimate = [](double S) { return 2.0 / (pi * S); };
    }
    return sym;
}

LineSymbol pole_part_line_symbol(const FactorSpec& spec, int truncation) {
    LineSymbol sym;
    sym.f = [spec, truncation](double s) { return pole_part(spec, cplx(0.5, s), truncation).value; };
    sym.rate = spec_rate(spec);
    const auto primes = primes_of(spec);
    if (!has_archimedean_part(spec) && primes.size() == 1) {
        sym.tail = LineSymbol::Tail::Periodic;
        sym.pieces = {{sym.f, 2.0 * pi / std::log(static_cast<double>(primes[0]))}};
    } else if (primes.empty()) {
        // the pole part decays like c/s on the line
        sym.tail = LineSymbol::Tail::Decaying;
        const auto f = sym.f;
        sym.tail_estimate = [f](double S) { return std::abs(f(S)) * S / (pi * S * S); };
    } else {
        sym.tail = LineSymbol::Tail::Unresolved;
        sym.tail_estimate = [](double S) { return 2.0 / (pi * S); };
    }
    return sym;
}

LineCoefficients line_coefficients(const LineSymbol& symbol, int k_min, int k_max,
                                   const LineQuadratureOptions& options) {
    if (k_min > k_max) throw Error("domain", "empty coefficient range");
    double S = options.half_width;
    LineCoefficients out;
    out.k_min = k_min;
    int coarse_nodes = 0;
    const auto fine = main_integral(symbol, k_min, k_max, S, options.panel_order, options.resolution, out.nodes);
    const auto coarse = main_integral(symbol, k_min, k_max, S, options.panel_order, 0.7 * options.resolution, coarse_nodes);
    out.values = fine;
    out.error.resize(fine.size());
    for (std::size_t i = 0; i < fine.size(); ++i) out.error[i] = std::abs(fine[i] - coarse[i]);

    if (symbol.tail == LineSymbol::Tail::Periodic) {
        std::vector<double> gx, gw;
        gauss_rule(16, gx, gw);
        const double rate_at_S = symbol.rate(S);
        std::vector<cplx> tails(fine.size());
        parallel_for(static_cast<int>(fine.size()), [&](int idx) {
            const int k = k_min + idx;
            cplx t = 0.0;
            for (const auto& piece : symbol.pieces) {
                const int panels = 4 + static_cast<int>(std::ceil(rate_at_S * piece.period / pi));
                t += periodic_tail(piece, S, k, gx, gw, panels);
            }
            tails[idx] = t;
        });
        for (std::size_t i = 0; i < fine.size(); ++i) {
            out.values[i] += tails[i];
            // next Euler-Maclaurin term, T^4/720 * max|A'''| with A''' ~ 24/(pi S^5)
            double em = 0.0;
            for (const auto& piece : symbol.pieces) em += 2.0 * std::pow(piece.period, 4) / 720.0 * 24.0 / (pi * std::pow(S, 5));
            out.error[i] += em + 1e-15;
        }
    } else {
        const double t = symbol.tail_estimate(S);
        for (auto& e : out.error) e += t;
    }
    return out;
}

}  // namespace qh
