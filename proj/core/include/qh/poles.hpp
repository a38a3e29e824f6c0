#pragma once

#include <functional>
#include <vector>

#include "qh/factors.hpp"

namespace qh {

// Residue of rho_inf at -2n.
cplx residue_rho_inf(int n);
// Residue of rho_p at every pole 2 pi i n / log p.
double residue_rho_prime(long p);
// Residue at -2k - 2mn of rho_inf^{(m,k)} (normalized) or phi_{m,k}.
cplx residue_rho_gauss(int m, int k, int n, bool normalized);

// Coefficients A_1..A_order of (z - z0)^{-j}, from `samples` equispaced points on a circle.
std::vector<cplx> laurent_coefficients(const std::function<cplx(cplx)>& f, cplx z0, int order,
                                       double radius, int samples = 64);

// How much of the infinite pole sets to enumerate.
struct PoleTruncation {
    int arch_terms = 40;      // archimedean and Gauss poles per factor
    int prime_terms = 10000;  // prime poles with |n| <= prime_terms
    double height = -1.0;     // if positive, prime poles with |Im z| <= height instead
};

// A pole of the full product with its principal part.
struct ProductPole {
    cplx location;
    int order = 1;
    std::vector<cplx> laurent;  // laurent[j] multiplies (z - location)^{-(j+1)}
    std::vector<int> members;   // indices into spec.flatten()
    int index = 0;              // n in -2n, 2 pi i n / log p, ... for the first member
};

std::vector<ProductPole> product_poles(const FactorSpec& spec, const PoleTruncation& trunc);

struct Window {
    double re_min, re_max, im_min, im_max;
};

// All poles of the spec's function inside the window; orders add where members share a pole.
std::vector<PoleDatum> poles_residues(const FactorSpec& spec, const Window& window);

// Sum of principal parts.  A single rho_p uses (p-1)/(2p) coth(z log p / 2); otherwise the
// series over the enumerated poles is summed and the tail is estimated.
SeriesValue pole_part(const FactorSpec& spec, cplx z, int truncation, double tolerance = 1e-12);

}  // namespace qh
