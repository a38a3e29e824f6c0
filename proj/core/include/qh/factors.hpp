#pragma once

#include <string>
#include <vector>

#include "qh/types.hpp"

namespace qh {

bool is_prime(long n);

struct Place {
    enum class Kind { Archimedean, Prime };
    Kind kind = Kind::Archimedean;
    long p = 0;

    static Place archimedean() { return {}; }
    static Place prime(long p);  // throws unless p is prime

    bool is_archimedean() const { return kind == Kind::Archimedean; }
    double log_p() const;
    bool operator==(const Place&) const = default;
};

// Which ratio a computation targets.
//   FullRatio(v)            rho_v(z) = gamma_v(z) / gamma_v(1 - z)
//   GaussFactor(m, k)       phi_{m,k}(z) = Gamma(z/2m + k/m) / Gamma((1-z)/2m + k/m)
//   NormalizedGaussFactor   rho_inf^{(m,k)}(z) = (pi/m)^{1/2m - z/m} phi_{m,k}(z)
//   Product                 pointwise product of the members
//   Unit                    the constant 1, used for controls
struct FactorSpec {
    enum class Kind { FullRatio, GaussFactor, NormalizedGaussFactor, Product, Unit };
    Kind kind = Kind::Unit;
    Place place;
    int m = 1;
    int k = 0;
    std::vector<FactorSpec> members;

    static FactorSpec unit() { return {}; }
    static FactorSpec ratio(Place v);
    static FactorSpec inf() { return ratio(Place::archimedean()); }
    static FactorSpec prime(long p) { return ratio(Place::prime(p)); }
    static FactorSpec gauss(int m, int k);
    static FactorSpec normalized_gauss(int m, int k);
    static FactorSpec product(std::vector<FactorSpec> members);

    // Atomic factors with nested products expanded; Unit factors are dropped.
    std::vector<FactorSpec> flatten() const;
    bool operator==(const FactorSpec&) const = default;
};

// Grammar: "inf", "p:<prime>", "gauss:<m>:<k>" (normalized factor), "phi:<m>:<k>" (raw
// factor), "1", joined by '*'.
FactorSpec parse_spec(const std::string& text);
std::string to_string(const FactorSpec& spec);

// Sorted distinct primes appearing in the spec.
std::vector<long> primes_of(const FactorSpec& spec);
bool has_archimedean_part(const FactorSpec& spec);

cplx gamma_factor(const Place& place, cplx z);

cplx rho(const FactorSpec& spec, cplx z);
cplx rho_inf(cplx z);
cplx rho_prime(long p, cplx z);
cplx phi_gauss(int m, int k, cplx z);
cplx rho_gauss(int m, int k, cplx z);

// 2 cos(pi z / 2) (2 pi)^{-z} Gamma(z)
cplx rho_inf_alt(cplx z);

// (a - 1/2) log|t| - (pi/2)|t|
double stirling_sigma(double a, double t);

// |rho_inf(it)| = |t|^{-1/2} (2 pi coth(pi |t| / 2))^{1/2}
double abs_rho_inf_imag(double t);

}  // namespace qh
