#pragma once

#include <cstdint>
#include <vector>

#include "qh/operators.hpp"

namespace qh {

struct BlaschkeValue {
    cplx value;
    double tail_bound = 0.0;  // bound on |B_p(v) - value|
};

// B_p(v) = prod_{|n| <= n_trunc} |a_n|/a_n (a_n - v)/(1 - conj(a_n) v), a_n = x_p(n).  Each omitted
// factor satisfies |1 - b_a(v)| <= (1 - |a|)(1 + |v|)/(1 - |v|), and sum_{|n| > N} (1 - |a_n|) is
// about log^2 p / (2 pi^2 N).
BlaschkeValue blaschke(long p, cplx v, int n_trunc);
// -p^{(v+1)/(v-1)}
cplx iota(long p, cplx v);
// Taylor coefficients 0..degree-1 of the truncated product.
std::vector<cplx> blaschke_taylor(long p, int n_trunc, int degree);

struct BlaschkeIdentity {
    int samples = 0;
    double max_residual = 0.0;   // max |kappa_p B_p - iota_p|
    double max_bound = 0.0;      // max computed tolerance
    bool below_bound = true;     // every residual below its own bound
};
// Random interior samples with |v| <= radius.
BlaschkeIdentity blaschke_identity(long p, int n_trunc, int samples, std::uint64_t seed = 7,
                                   double radius = 0.9);

struct KernelMembership {
    // ||P_n (1-P) kappa_p P f|| / ||f|| for f = B h, with the range cut to n coordinates and f
    // used exactly through the rank-one form sum_m c_m f(x_m) xi_{x_m}
    std::vector<double> residuals;
    std::vector<double> tail_bounds;  // poles beyond symbol_terms
    // ||H_n f_n|| / ||f_n|| with f_n the first n Taylor coefficients of f
    std::vector<double> coordinate_residuals;
    int blaschke_terms = 0;
    int symbol_terms = 0;
};
// polys[i] are the coefficients of h_i.
KernelMembership kernel_membership(long p, int n, const std::vector<std::vector<cplx>>& polys,
                                   int blaschke_terms = 2000, int symbol_terms = 20000);

}  // namespace qh
