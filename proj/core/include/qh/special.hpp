#pragma once

#include "qh/types.hpp"

namespace qh {

// log Gamma(z) by a g = 7, n = 9 Lanczos sum, reflected for Re z < 1/2.
// exp(log_gamma(z)) is Gamma(z); the real part is log|Gamma(z)|.  The imaginary part is a
// continuous branch on Re z >= 1/2 and may differ from other conventions by 2*pi*i*m
// on the reflected side.  Throws PoleError at non-positive integers.
cplx log_gamma(cplx z);
cplx gamma(cplx z);

// log sin(pi z) and log cos(pi z / 2), stable for large |Im z|.
cplx log_sin_pi(cplx z);
cplx log_cos_pi_half(cplx z);

// coth(w), using its Laurent series when |w| < 1e-4.
cplx coth(cplx w);

// Generalized Laguerre polynomials L_0^(a)(x) .. L_n^(a)(x) by the three-term recurrence.
std::vector<double> laguerre_table(int n, double a, double x);

}  // namespace qh
