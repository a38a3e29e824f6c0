#pragma once

#include "qh/types.hpp"

namespace qh::extended {

// Reference evaluations carried out with 50 significant digits (Stirling series after an
// upward shift, reflection on the left half-plane) and rounded to double at the end.
// Slow; intended for generating and checking reference values, not for bulk work.
cplx log_gamma(cplx z);
cplx rho_inf(cplx z);
cplx rho_prime(long p, cplx z);

}  // namespace qh::extended
