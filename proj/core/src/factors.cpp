#include "qh/factors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "qh/poles.hpp"
#include "qh/special.hpp"

namespace qh {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Place Place::prime(long p) {
    if (!is_prime(p)) throw Error("parse", "not a prime: " + std::to_string(p));
    return {Kind::Prime, p};
}

double Place::log_p() const { return std::log(static_cast<double>(p)); }

FactorSpec FactorSpec::ratio(Place v) {
    FactorSpec s;
    s.kind = Kind::FullRatio;
    s.place = v;
    return s;
}

static void check_gauss(int m, int k) {
    if (m < 1 || k < 0 || k > m - 1)
        throw Error("parse", "Gauss factor needs m >= 1 and 0 <= k <= m-1");
}

FactorSpec FactorSpec::gauss(int m, int k) {
    check_gauss(m, k);
    FactorSpec s;
    s.kind = Kind::GaussFactor;
    s.m = m;
    s.k = k;
    return s;
}

FactorSpec FactorSpec::normalized_gauss(int m, int k) {
    FactorSpec s = gauss(m, k);
    s.kind = Kind::NormalizedGaussFactor;
    return s;
}

FactorSpec FactorSpec::product(std::vector<FactorSpec> members) {
    if (members.empty()) throw Error("parse", "empty product");
    FactorSpec s;
    s.kind = Kind::Product;
    s.members = std::move(members);
    return s;
}

std::vector<FactorSpec> FactorSpec::flatten() const {
    std::vector<FactorSpec> out;
    if (kind == Kind::Product) {
        for (const auto& m : members) {
            auto sub = m.flatten();
            out.insert(out.end(), sub.begin(), sub.end());
        }
    } else if (kind != Kind::Unit) {
        out.push_back(*this);
    }
    return out;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

long parse_int(const std::string& s, const std::string& context) {
    if (s.empty() || s.size() > 9 ||
        !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw Error("parse", "bad integer '" + s + "' in '" + context + "'");
    return std::stol(s);
}

FactorSpec parse_atom(const std::string& atom) {
    if (atom == "inf") return FactorSpec::inf();
    if (atom == "1") return FactorSpec::unit();
    const auto parts = split(atom, ':');
    if (parts.size() == 2 && parts[0] == "p") return FactorSpec::prime(parse_int(parts[1], atom));
    if (parts.size() == 3 && (parts[0] == "gauss" || parts[0] == "phi")) {
        const int m = static_cast<int>(parse_int(parts[1], atom));
        const int k = static_cast<int>(parse_int(parts[2], atom));
        return parts[0] == "gauss" ? FactorSpec::normalized_gauss(m, k) : FactorSpec::gauss(m, k);
    }
    throw Error("parse", "unrecognized factor '" + atom + "'");
}

std::string atom_string(const FactorSpec& s) {
    switch (s.kind) {
        case FactorSpec::Kind::FullRatio:
            return s.place.is_archimedean() ? "inf" : "p:" + std::to_string(s.place.p);
        case FactorSpec::Kind::GaussFactor:
            return "phi:" + std::to_string(s.m) + ":" + std::to_string(s.k);
        case FactorSpec::Kind::NormalizedGaussFactor:
            return "gauss:" + std::to_string(s.m) + ":" + std::to_string(s.k);
        default:
            return "1";
    }
}

}  // namespace

FactorSpec parse_spec(const std::string& text) {
    const auto atoms = split(text, '*');
    std::vector<FactorSpec> members;
    for (const auto& a : atoms) {
        if (a.empty()) throw Error("parse", "empty factor in '" + text + "'");
        members.push_back(parse_atom(a));
    }
    if (members.size() == 1) return members.front();
    return FactorSpec::product(std::move(members));
}

std::string to_string(const FactorSpec& spec) {
    const auto atoms = spec.flatten();
    if (atoms.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) out += "*";
        out += atom_string(atoms[i]);
    }
    return out;
}

std::vector<long> primes_of(const FactorSpec& spec) {
    std::vector<long> out;
    for (const auto& a : spec.flatten())
        if (a.kind == FactorSpec::Kind::FullRatio && !a.place.is_archimedean()) out.push_back(a.place.p);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool has_archimedean_part(const FactorSpec& spec) {
    for (const auto& a : spec.flatten())
        if (a.kind != FactorSpec::Kind::FullRatio || a.place.is_archimedean()) return true;
    return false;
}

namespace {

std::string fmt_z(cplx z) {
    std::ostringstream o;
    o.precision(12);
    o << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return o.str();
}

// Nearest point of the lattice base + step * n (n >= 0), for real-axis pole families.
bool near_progression(cplx z, double base, double step, long& n) {
    const double t = (base - z.real()) / step;
    if (t < -0.5) return false;
    n = std::lround(t);
    return std::abs(z - cplx(base - step * static_cast<double>(n), 0.0)) < pole_threshold;
}

// Nearest point of the imaginary lattice shift + 2 pi i n / L.
bool near_imaginary_lattice(cplx z, double shift, double L, long& n) {
    const double period = 2.0 * pi / L;
    n = std::lround(z.imag() / period);
    return std::abs(z - cplx(shift, period * static_cast<double>(n))) < pole_threshold;
}

}  // namespace

cplx rho_inf(cplx z) {
    long n = 0;
    if (near_progression(z, 0.0, 2.0, n))
        throw PoleError("rho_inf has a pole at " + fmt_z(cplx(-2.0 * n, 0)),
                        PoleDatum{cplx(-2.0 * n, 0.0), 1, {residue_rho_inf(static_cast<int>(n))}});
    if (near_progression(-z + 1.0, 0.0, 2.0, n))
        throw ZeroError("rho_inf has a zero at " + fmt_z(cplx(1.0 + 2.0 * n, 0)), cplx(1.0 + 2.0 * n, 0.0));
    const cplx e = (0.5 - z) * std::log(pi) + log_gamma(z / 2.0) - log_gamma((1.0 - z) / 2.0);
    return std::exp(e);
}

cplx rho_prime(long p, cplx z) {
    const double L = std::log(static_cast<double>(p));
    long n = 0;
    if (near_imaginary_lattice(z, 0.0, L, n)) {
        const cplx z0(0.0, 2.0 * pi * n / L);
        throw PoleError("rho_" + std::to_string(p) + " has a pole at " + fmt_z(z0),
                        PoleDatum{z0, 1, {cplx(residue_rho_prime(p), 0.0)}});
    }
    if (near_imaginary_lattice(z, 1.0, L, n))
        throw ZeroError("rho_" + std::to_string(p) + " has a zero", cplx(1.0, 2.0 * pi * n / L));
    return (1.0 - std::exp((z - 1.0) * L)) / (1.0 - std::exp(-z * L));
}

cplx phi_gauss(int m, int k, cplx z) {
    check_gauss(m, k);
    long n = 0;
    if (near_progression(z, -2.0 * k, 2.0 * m, n)) {
        const cplx z0(-2.0 * k - 2.0 * m * n, 0.0);
        throw PoleError("phi has a pole at " + fmt_z(z0),
                        PoleDatum{z0, 1, {residue_rho_gauss(m, k, static_cast<int>(n), false)}});
    }
    if (near_progression(-z + 1.0, -2.0 * k, 2.0 * m, n))
        throw ZeroError("phi has a zero", cplx(1.0 + 2.0 * k + 2.0 * m * n, 0.0));
    const double dm = m;
    return std::exp(log_gamma(z / (2.0 * dm) + k / dm) - log_gamma((1.0 - z) / (2.0 * dm) + k / dm));
}

cplx rho_gauss(int m, int k, cplx z) {
    try {
        const double dm = m;
        return std::exp((1.0 / (2.0 * dm) - z / dm) * std::log(pi / dm)) * phi_gauss(m, k, z);
    } catch (PoleError& e) {
        PoleDatum d = e.datum();
        d.coeffs = {residue_rho_gauss(m, k, static_cast<int>(std::lround((-2.0 * k - d.location.real()) / (2.0 * m))), true)};
        throw PoleError(e.what(), d);
    }
}

cplx gamma_factor(const Place& place, cplx z) {
    if (place.is_archimedean()) {
        long n = 0;
        if (near_progression(z, 0.0, 2.0, n)) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            const cplx z0(-2.0 * n, 0.0);
            // residue of Gamma(z/2) is 2(-1)^n/n!, times pi^{n}
            const double r = sign * 2.0 * std::pow(pi, static_cast<double>(n)) / std::tgamma(n + 1.0);
            throw PoleError("gamma_inf has a pole at " + fmt_z(z0), PoleDatum{z0, 1, {cplx(r, 0.0)}});
        }
        return std::exp(-z / 2.0 * std::log(pi) + log_gamma(z / 2.0));
    }
    const double L = place.log_p();
    long n = 0;
    if (near_imaginary_lattice(z, 0.0, L, n)) {
        const cplx z0(0.0, 2.0 * pi * n / L);
        throw PoleError("gamma_p has a pole at " + fmt_z(z0), PoleDatum{z0, 1, {cplx(1.0 / L, 0.0)}});
    }
    return 1.0 / (1.0 - std::exp(-z * L));
}

cplx rho(const FactorSpec& spec, cplx z) {
    switch (spec.kind) {
        case FactorSpec::Kind::Unit:
            return 1.0;
        case FactorSpec::Kind::FullRatio:
            return spec.place.is_archimedean() ? rho_inf(z) : rho_prime(spec.place.p, z);
        case FactorSpec::Kind::GaussFactor:
            return phi_gauss(spec.m, spec.k, z);
        case FactorSpec::Kind::NormalizedGaussFactor:
            return rho_gauss(spec.m, spec.k, z);
        case FactorSpec::Kind::Product: {
            cplx v = 1.0;
            for (const auto& m : spec.members) v *= rho(m, z);
            return v;
        }
    }
    return 1.0;
}

cplx rho_inf_alt(cplx z) {
    long n = 0;
    if (near_progression(z, 0.0, 2.0, n))
        throw PoleError("rho_inf has a pole at " + fmt_z(cplx(-2.0 * n, 0)),
                        PoleDatum{cplx(-2.0 * n, 0.0), 1, {residue_rho_inf(static_cast<int>(n))}});
    if (near_progression(-z + 1.0, 0.0, 2.0, n)) return 0.0;
    return std::exp(std::log(2.0) + log_cos_pi_half(z) - z * std::log(2.0 * pi) + log_gamma(z));
}

double stirling_sigma(double a, double t) {
    return (a - 0.5) * std::log(std::abs(t)) - 0.5 * pi * std::abs(t);
}

double abs_rho_inf_imag(double t) {
    if (t == 0.0) throw PoleError("rho_inf has a pole at 0", PoleDatum{0.0, 1, {2.0}});
    const double a = std::abs(t);
    return std::sqrt(2.0 * pi / (a * std::tanh(pi * a / 2.0)));
}

}  // namespace qh
