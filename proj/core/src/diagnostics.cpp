#include "qh/diagnostics.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>

#include "qh/parallel.hpp"
#include "qh/special.hpp"

namespace qh {

std::string decay_class_name(DecayClass c) {
    switch (c) {
        case DecayClass::RapidDecay: return "RapidDecay";
        case DecayClass::PowerLaw: return "PowerLaw";
        case DecayClass::NonCompact: return "NonCompact";
        case DecayClass::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

QuasiInnerVerdict classify(const FactorSpec& spec, const std::vector<int>& n_sweep, const ClassifyOptions& options) {
    if (n_sweep.size() < 2) throw Error("domain", "n_sweep needs at least two sizes");
    for (std::size_t i = 0; i < n_sweep.size(); ++i) {
        if (n_sweep[i] < 2 || n_sweep[i] > 512) throw Error("resource", "sweep sizes must lie in [2, 512]");
        if (i > 0 && n_sweep[i] <= n_sweep[i - 1]) throw Error("domain", "n_sweep must be increasing");
    }
    QuasiInnerVerdict v;
    v.spec = spec;
    v.n_sweep = n_sweep;
    for (int n : n_sweep) {
        SpectralProfile prof = pole_space_profile(spec, n);
        const auto& s = prof.singular_values;
        v.counts_above_tau.push_back(
            static_cast<int>(std::count_if(s.begin(), s.end(), [&](double x) { return x > options.tau; })));
        const std::size_t mid = static_cast<std::size_t>((n + 1) / 2);
        v.mid_sigma.push_back(mid >= 1 && mid <= s.size() ? s[mid - 1] : 0.0);
        v.alphas.push_back(prof.power_fit.parameter);
        v.profiles.push_back(std::move(prof));
        if (options.coordinate_evidence)
            v.coordinate_profiles.push_back(singular_values(hankel_truncation(residue_coeffs(spec, 2 * n), n)));
    }
    const auto& last = v.profiles.back();
    v.alpha = last.power_fit.parameter;
    v.power_r2 = last.power_fit.r_squared;
    v.sqrt_c = last.sqrt_fit.parameter;
    v.sqrt_r2 = last.sqrt_fit.r_squared;

    bool growing = true;
    for (std::size_t i = 1; i < n_sweep.size(); ++i)
        if (v.counts_above_tau[i] <= v.counts_above_tau[i - 1]) growing = false;
    bool flat = std::all_of(v.mid_sigma.begin(), v.mid_sigma.end(), [](double x) { return x > 0.0; });
    if (flat) {
        const double slope = std::log(v.mid_sigma.back() / v.mid_sigma.front()) /
                             std::log(static_cast<double>(n_sweep.back()) / n_sweep.front());
        flat = slope > options.mid_slope_flat;
    }
    const std::size_t L = v.profiles.size();
    const bool rank_stable = v.profiles[L - 1].numerical_rank == v.profiles[L - 2].numerical_rank;

    if (growing && flat) {
        v.decay_class = DecayClass::NonCompact;
        v.note = "counts above tau grow and the mid spectrum stays flat";
    } else if (rank_stable && v.sqrt_c > 0.0) {
        v.decay_class = DecayClass::RapidDecay;
        v.note = "numerical rank saturates; sqrt fit R2 recorded";
    } else {
        const auto [lo, hi] = std::minmax_element(v.alphas.begin(), v.alphas.end());
        if (*hi - *lo > options.alpha_spread) {
            v.decay_class = DecayClass::Inconclusive;
            v.note = "power-law exponent drifts across the sweep";
        } else {
            v.decay_class = DecayClass::PowerLaw;
            v.note = "log-log fit at the largest size";
        }
    }
    v.compact = v.decay_class == DecayClass::RapidDecay || v.decay_class == DecayClass::PowerLaw;
    return v;
}

bool SuiteReport::all_pass() const {
    return std::all_of(results.begin(), results.end(), [](const IdentityResult& r) { return r.pass; });
}

const IdentityResult* SuiteReport::find(const std::string& name) const {
    for (const auto& r : results)
        if (r.name == name) return &r;
    return nullptr;
}

namespace {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }

private:
    std::mt19937_64 rng_;
};

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Draws points until `samples` residuals are collected; points where evaluation fails are skipped.
template <class Draw, class Residual>
IdentityResult run_identity(const std::string& name, double tol, int samples, Sampler& sampler, Draw draw,
                            Residual residual) {
    IdentityResult r;
    r.name = name;
    int attempts = 0;
    while (r.samples < samples && attempts < 20 * samples) {
        ++attempts;
        const auto pt = draw(sampler);
        double e;
        try {
            e = residual(pt);
        } catch (const Error&) {
            continue;
        }
        if (!std::isfinite(e)) continue;
        r.max_residual = std::max(r.max_residual, e);
        ++r.samples;
    }
    r.pass = r.samples == samples && r.max_residual < tol;
    return r;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

cplx general_point(Sampler& s) { return {s.uniform(-6.0, 7.0), s.uniform(-12.0, 12.0)}; }

void atom_identities(const FactorSpec& atom, const Evaluator& f, double tol, int samples, Sampler& sampler,
                     const std::string& suffix, std::vector<IdentityResult>& out) {
    using K = FactorSpec::Kind;
    if (atom.kind == K::FullRatio && atom.place.is_archimedean()) {
        const double c = 1.0 / (4.0 * pi * pi);
        out.push_back(run_identity("functional_equation" + suffix, tol, samples, sampler, general_point, [&](cplx z) {
            const cplx a = f(z + 2.0), b = c * z * (z + 1.0) * f(z);
            if (!finite(a) || !finite(b)) throw Error("domain", "overflow");
            return std::abs(a + b) / (std::abs(a) + std::abs(b));
        }));
        out.push_back(run_identity("cosine_form" + suffix, tol, samples, sampler, general_point,
                                   [&](cplx z) { return rel(rho_inf_alt(z), f(z)); }));
        out.push_back(run_identity(
            "abs_rho_inf_imag" + suffix, tol, samples, sampler, [](Sampler& s) { return s.uniform(1e-3, 50.0); },
            [&](double t) {
                const double want = abs_rho_inf_imag(t);
                return std::abs(std::abs(f(cplx(0.0, t))) - want) / want;
            }));
    } else if (atom.kind == K::FullRatio) {
        const long p = atom.place.p;
        const double L = std::log(static_cast<double>(p));
        const double dp = static_cast<double>(p);
        out.push_back(run_identity("periodicity" + suffix, tol, samples, sampler, general_point,
                                   [&](cplx z) { return rel(f(z + cplx(0.0, 2.0 * pi / L)), f(z)); }));
        out.push_back(run_identity("coth_decomposition" + suffix, tol, samples, sampler, general_point, [&](cplx z) {
            const cplx want = (dp - 1.0) / (2.0 * dp) * coth(z * L / 2.0) - std::exp((z - 1.0) * L) +
                              (dp - 1.0) / (2.0 * dp);
            return rel(f(z), want);
        }));
        out.push_back(run_identity(
            "horizontal_line" + suffix, tol, samples, sampler,
            [](Sampler& s) { return std::pair<double, int>(s.uniform(-5.0, 5.0), s.integer(-5, 5)); },
            [&](std::pair<double, int> xm) {
                const double x = xm.first;
                const cplx v = f(cplx(x, (2.0 * xm.second + 1.0) * pi / L));
                const double want = (std::pow(dp, x) + dp) / (std::pow(dp, 1.0 - x) + dp);
                return std::abs(v - want) / want;
            }));
    } else if (atom.kind == K::GaussFactor || atom.kind == K::NormalizedGaussFactor) {
        const double m = atom.m, k = atom.k;
        const double scale = atom.kind == K::NormalizedGaussFactor ? std::pow(pi / m, -2.0) : 1.0;
        out.push_back(run_identity("shift_equation" + suffix, tol, samples, sampler, general_point, [&](cplx z) {
            const cplx want = f(z) * (z / (2.0 * m) + k / m) * ((1.0 - z) / (2.0 * m) + k / m - 1.0) * scale;
            const cplx got = f(z + 2.0 * m);
            if (!finite(want) || !finite(got)) throw Error("domain", "overflow");
            return std::abs(got - want) / std::max(1.0, std::abs(want));
        }));
    }
}

}  // namespace

SuiteReport verify_suite(const FactorSpec& spec, double tolerance, int samples, std::uint64_t seed,
                         Evaluator evaluator) {
    if (!(tolerance > 0.0)) throw Error("domain", "tolerance must be positive");
    SuiteReport rep;
    rep.spec = spec;
    rep.tolerance = tolerance;
    const Evaluator f = evaluator ? evaluator : Evaluator([spec](cplx z) { return rho(spec, z); });
    Sampler sampler(seed);

    rep.results.push_back(run_identity("reflection", tolerance, samples, sampler, general_point, [&](cplx z) {
        const cplx a = f(z), b = f(1.0 - z);
        return std::abs(a * b - 1.0);
    }));
    rep.results.push_back(run_identity(
        "unit_modulus", tolerance, samples, sampler, [](Sampler& s) { return s.uniform(-50.0, 50.0); },
        [&](double s) { return std::abs(std::abs(f(cplx(0.5, s))) - 1.0); }));
    rep.results.push_back(run_identity("reality", tolerance, samples, sampler, general_point,
                                       [&](cplx z) { return rel(f(std::conj(z)), std::conj(f(z))); }));

    const auto atoms = spec.flatten();
    if (atoms.size() == 1) {
        atom_identities(atoms[0], f, tolerance, samples, sampler, "", rep.results);
    } else {
        for (const auto& a : atoms) {
            const Evaluator fa = [a](cplx z) { return rho(a, z); };
            atom_identities(a, fa, tolerance, samples, sampler, "[" + to_string(a) + "]", rep.results);
        }
    }
    return rep;
}

IdentityResult gauss_product_check(int m, bool normalized, int samples, std::uint64_t seed) {
    if (m < 1) throw Error("domain", "m must be positive");
    Sampler sampler(seed);
    const std::string name = std::string(normalized ? "gauss_normalized_product" : "gauss_product") + "[m=" +
                             std::to_string(m) + "]";
    return run_identity(name, 1e-9, samples, sampler, general_point, [&](cplx z) {
        cplx prod = 1.0;
        for (int k = 0; k < m; ++k) prod *= normalized ? rho_gauss(m, k, z) : phi_gauss(m, k, z);
        const cplx want = normalized ? rho_inf(z) : std::pow(m / pi, 0.5 - z) * rho_inf(z);
        if (!finite(prod) || !finite(want)) throw Error("domain", "overflow");
        return std::abs(prod - want) / std::max(1.0, std::abs(want));
    });
}

double TriangularReport::max() const {
    return std::max({isometry, coisometry, partial_isometry, u12_u22, u11_u12});
}

TriangularReport triangular_unitary_check(const DenseMatrix& u11, const DenseMatrix& u12, const DenseMatrix& u22) {
    // u11: H1 -> K1, u12: H2 -> K1, u22: H2 -> K2
    if (u12.rows() != u11.rows() || u12.cols() != u22.cols())
        throw Error("domain", "incompatible block dimensions");
    auto opnorm = [](const DenseMatrix& m) {
        if (m.size() == 0) return 0.0;
        Eigen::BDCSVD<DenseMatrix> svd(m);
        return svd.singularValues()(0);
    };
    TriangularReport r;
    const auto I = [](Eigen::Index n) { return DenseMatrix::Identity(n, n); };
    r.isometry = opnorm(u11.adjoint() * u11 - I(u11.cols()));
    r.coisometry = opnorm(u22 * u22.adjoint() - I(u22.rows()));
    r.partial_isometry = opnorm(u12 * u12.adjoint() - (I(u11.rows()) - u11 * u11.adjoint()));
    r.u12_u22 = opnorm(u12 * u22.adjoint());
    r.u11_u12 = opnorm(u11.adjoint() * u12);
    return r;
}

}  // namespace qh
