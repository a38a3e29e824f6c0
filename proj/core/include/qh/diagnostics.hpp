#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qh/pole_space.hpp"

namespace qh {

enum class DecayClass { RapidDecay, PowerLaw, NonCompact, Inconclusive };
std::string decay_class_name(DecayClass c);

struct ClassifyOptions {
    double tau = 0.05;               // compactness counting threshold
    double mid_slope_flat = -0.1;    // log-log slope of sigma_{n/2} above this counts as flat
    double alpha_spread = 0.3;       // PowerLaw fits across the sweep must agree this well
    bool coordinate_evidence = true; // also record Hankel sections built from the residue stream
};

// Verdict from pole-space spectra of the rank-one model truncated at height 2 pi n / log p_min.
//   NonCompact    counts above tau strictly increase and sigma_{ceil(n/2)} stays flat
//   RapidDecay    numerical rank identical at the last two sizes and the sqrt-fit slope c > 0
//   PowerLaw      otherwise, alpha from the log-log fit at the largest n
//   Inconclusive  PowerLaw fits disagree by more than alpha_spread across the sweep
struct QuasiInnerVerdict {
    FactorSpec spec;
    bool compact = false;
    DecayClass decay_class = DecayClass::Inconclusive;
    double alpha = 0.0;      // PowerLaw exponent at the largest n
    double sqrt_c = 0.0;     // sqrt fit at the largest n
    double sqrt_r2 = 0.0;
    double power_r2 = 0.0;
    std::vector<int> n_sweep;
    std::vector<SpectralProfile> profiles;             // pole space
    std::vector<SpectralProfile> coordinate_profiles;  // Hankel sections, may be empty
    std::vector<int> counts_above_tau;
    std::vector<double> mid_sigma;
    std::vector<double> alphas;
    std::string note;
};

QuasiInnerVerdict classify(const FactorSpec& spec, const std::vector<int>& n_sweep,
                           const ClassifyOptions& options = {});

struct IdentityResult {
    std::string name;
    double max_residual = 0.0;
    int samples = 0;
    bool pass = false;
};

struct SuiteReport {
    FactorSpec spec;
    double tolerance = 0.0;
    std::vector<IdentityResult> results;
    bool all_pass() const;
    const IdentityResult* find(const std::string& name) const;
};

using Evaluator = std::function<cplx(cplx)>;

// Runs every closed-form identity that applies to the spec, on `samples` random points per
// identity.  Products also run the identities of each factor, named "<identity>[<factor>]".
// `evaluator` replaces rho(spec, .) for the spec-level identities (negative controls).
SuiteReport verify_suite(const FactorSpec& spec, double tolerance, int samples = 100, std::uint64_t seed = 1,
                         Evaluator evaluator = {});

struct TriangularReport {
    double isometry = 0.0;          // ||u11^* u11 - 1||
    double coisometry = 0.0;        // ||u22 u22^* - 1||
    double partial_isometry = 0.0;  // ||u12 u12^* - (1 - u11 u11^*)||
    double u12_u22 = 0.0;           // ||u12 u22^*||
    double u11_u12 = 0.0;           // ||u11^* u12||
    double max() const;
    bool pass(double tolerance) const { return max() < tolerance; }
};

// Blocks of [[u11, u12], [0, u22]] acting from H1 (+) H2 to K1 (+) K2: u11: H1 -> K1,
// u12: H2 -> K1, u22: H2 -> K2.
TriangularReport triangular_unitary_check(const DenseMatrix& u11, const DenseMatrix& u12, const DenseMatrix& u22);

}  // namespace qh

namespace qh {

// prod_k phi_{m,k}(z) against (m/pi)^{1/2-z} rho_inf(z) (normalized = false), or
// prod_k rho_inf^{(m,k)}(z) against rho_inf(z) (normalized = true); relative residuals.
IdentityResult gauss_product_check(int m, bool normalized, int samples = 50, std::uint64_t seed = 3);

}  // namespace qh
