#include "qh/poles.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qh/special.hpp"

namespace qh {

cplx residue_rho_inf(int n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double lg = (2.0 * n + 0.5) * std::log(pi) - std::lgamma(n + 1.0) - std::lgamma(n + 0.5);
    return sign * 2.0 * std::exp(lg);
}

double residue_rho_prime(long p) {
    const double dp = static_cast<double>(p);
    return (1.0 - 1.0 / dp) / std::log(dp);
}

cplx residue_rho_gauss(int m, int k, int n, bool normalized) {
    const double dm = m;
    const cplx z0(-2.0 * k - 2.0 * dm * n, 0.0);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    cplx r = sign * 2.0 * dm * std::exp(-std::lgamma(n + 1.0) - log_gamma((1.0 - z0) / (2.0 * dm) + k / dm));
    if (normalized) r *= std::exp((1.0 / (2.0 * dm) - z0 / dm) * std::log(pi / dm));
    return r;
}

std::vector<cplx> laurent_coefficients(const std::function<cplx(cplx)>& f, cplx z0, int order,
                                       double radius, int samples) {
    std::vector<cplx> vals(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) {
        const double t = 2.0 * pi * j / samples;
        vals[j] = f(z0 + radius * std::polar(1.0, t));
    }
    std::vector<cplx> out(static_cast<std::size_t>(order));
    for (int q = 1; q <= order; ++q) {
        cplx s = 0.0;
        for (int j = 0; j < samples; ++j) s += vals[j] * std::polar(std::pow(radius, q), 2.0 * pi * q * j / samples);
        out[q - 1] = s / static_cast<double>(samples);
    }
    return out;
}

namespace {

struct AtomPole {
    cplx location;
    cplx residue;  // residue of the member itself
    int member;
    int index;
};

void atom_poles(const FactorSpec& a, int member, const PoleTruncation& t, std::vector<AtomPole>& out) {
    switch (a.kind) {
        case FactorSpec::Kind::FullRatio:
            if (a.place.is_archimedean()) {
                for (int n = 0; n < t.arch_terms; ++n) {
                    const cplx r = residue_rho_inf(n);
                    if (std::abs(r) < 1e-300) break;
                    out.push_back({cplx(-2.0 * n, 0.0), r, member, n});
                }
            } else {
                const double L = a.place.log_p();
                const double step = 2.0 * pi / L;
                const int N = t.height > 0 ? static_cast<int>(std::floor(t.height / step + 1e-9)) : t.prime_terms;
                const double r = residue_rho_prime(a.place.p);
                for (int n = -N; n <= N; ++n) out.push_back({cplx(0.0, step * n), r, member, n});
            }
            break;
        case FactorSpec::Kind::GaussFactor:
        case FactorSpec::Kind::NormalizedGaussFactor: {
            const bool norm = a.kind == FactorSpec::Kind::NormalizedGaussFactor;
            for (int n = 0; n < t.arch_terms; ++n) {
                const cplx r = residue_rho_gauss(a.m, a.k, n, norm);
                if (std::abs(r) < 1e-300) break;
                out.push_back({cplx(-2.0 * a.k - 2.0 * a.m * n, 0.0), r, member, n});
            }
            break;
        }
        default:
            break;
    }
}

}  // namespace

std::vector<ProductPole> product_poles(const FactorSpec& spec, const PoleTruncation& trunc) {
    const auto atoms = spec.flatten();
    std::vector<AtomPole> all;
    for (std::size_t i = 0; i < atoms.size(); ++i) atom_poles(atoms[i], static_cast<int>(i), trunc, all);

    // group coincident poles; sort on a lattice key so grouping is deterministic
    std::sort(all.begin(), all.end(), [](const AtomPole& a, const AtomPole& b) {
        if (a.location.imag() != b.location.imag()) return a.location.imag() < b.location.imag();
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.member < b.member;
    });
    std::vector<std::vector<AtomPole>> groups;
    for (const auto& p : all) {
        bool placed = false;
        for (auto it = groups.rbegin(); it != groups.rend() && it != groups.rbegin() + 4; ++it) {
            if (std::abs((*it)[0].location - p.location) < pole_threshold) {
                it->push_back(p);
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back({p});
    }

    std::vector<ProductPole> out;
    out.reserve(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto& grp = groups[g];
        ProductPole pp;
        pp.location = grp[0].location;
        pp.order = static_cast<int>(grp.size());
        pp.index = grp[0].index;
        for (const auto& a : grp) pp.members.push_back(a.member);
        if (grp.size() == 1) {
            cplx r = grp[0].residue;
            for (std::size_t i = 0; i < atoms.size(); ++i)
                if (static_cast<int>(i) != grp[0].member) r *= rho(atoms[i], pp.location);
            pp.laurent = {r};
        } else {
            // distance to the nearest other pole bounds the contour radius
            double dmin = 1.0;
            for (const auto& other : all)
                if (std::abs(other.location - pp.location) >= pole_threshold)
                    dmin = std::min(dmin, std::abs(other.location - pp.location));
            const double radius = std::min(0.5, 0.4 * dmin);
            const auto f = [&spec](cplx z) { return rho(spec, z); };
            pp.laurent = laurent_coefficients(f, pp.location, pp.order, radius, 64);
        }
        out.push_back(std::move(pp));
    }
    return out;
}

std::vector<PoleDatum> poles_residues(const FactorSpec& spec, const Window& w) {
    PoleTruncation t;
    // enough archimedean terms to reach the left edge, enough prime terms to reach the top
    t.arch_terms = std::max(1, static_cast<int>(std::ceil(-w.re_min / 2.0)) + 2);
    t.height = std::max(std::abs(w.im_min), std::abs(w.im_max)) + 1.0;
    std::vector<PoleDatum> out;
    for (const auto& pp : product_poles(spec, t)) {
        const cplx z = pp.location;
        if (z.real() < w.re_min || z.real() > w.re_max || z.imag() < w.im_min || z.imag() > w.im_max) continue;
        out.push_back({z, pp.order, pp.laurent});
    }
    return out;
}

SeriesValue pole_part(const FactorSpec& spec, cplx z, int truncation, double tolerance) {
    if (truncation < 1) throw Error("domain", "pole_part needs truncation >= 1");
    const auto atoms = spec.flatten();
    if (atoms.size() == 1 && atoms[0].kind == FactorSpec::Kind::FullRatio && !atoms[0].place.is_archimedean()) {
        const double dp = static_cast<double>(atoms[0].place.p);
        return {(dp - 1.0) / (2.0 * dp) * coth(z * atoms[0].place.log_p() / 2.0), 0.0, true};
    }
    PoleTruncation t;
    t.arch_terms = truncation;
    t.prime_terms = truncation;
    const auto poles = product_poles(spec, t);

    SeriesValue out{0.0, 0.0, true};
    double last_arch = 0.0;
    double last_prime = 0.0;
    for (const auto& pp : poles) {
        const cplx d = z - pp.location;
        if (std::abs(d) < pole_threshold) throw PoleError("pole_part evaluated at a pole", {pp.location, pp.order, pp.laurent});
        cplx term = 0.0;
        cplx dpow = d;
        for (const auto& c : pp.laurent) {
            term += c / dpow;
            dpow *= d;
        }
        out.value += term;
        const bool prime_pole = std::abs(pp.location.imag()) > 0.0;
        if (prime_pole) {
            if (std::abs(pp.index) == truncation) last_prime = std::max(last_prime, std::abs(term));
        } else {
            last_arch = std::abs(term);
        }
    }
    // archimedean residues fall off factorially, so the last term bounds the remainder;
    // prime terms fall like |n|^{-5/2} or slower, so the remainder is about n/1.5 last terms
    const double arch_tail = last_arch > 1e-16 * std::abs(out.value) ? last_arch : 0.0;
    const double prime_tail = 2.0 * last_prime * truncation / 1.5;
    out.tail_bound = arch_tail + prime_tail;
    out.converged = out.tail_bound <= tolerance * std::max(1.0, std::abs(out.value));
    return out;
}

}  // namespace qh
