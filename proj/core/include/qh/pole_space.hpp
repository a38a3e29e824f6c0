#pragma once

#include <vector>

#include "qh/operators.hpp"

namespace qh {

// Exact singular values of the off-diagonal block of a pole-truncated model, computed on the
// span of the pole vectors instead of a coordinate section.  A pole of order r at x
// contributes sum_i D_i C(k-1, i-1) x^{k-i} to c_{-k}; in entry (i, j) this is a sum of
// terms c |v_a(x)><v_b(x)| with
//   v_p(x)(i) = x^i,   v_d(x)(i) = i x^{i-1},   v_dd(x)(i) = i (i-1) x^{i-2}
// whose Gram matrices have closed forms in t = 1/(1 - conj(x1) x2).
struct PoleAtom {
    enum class Kind { P, D, DD };
    Kind range = Kind::P;
    Kind domain = Kind::P;
    cplx x;
    cplx coeff;
};

std::vector<PoleAtom> pole_atoms(const FactorSpec& spec, const PoleTruncation& truncation);

// sum_i conj(v_k1(x1)(i)) v_k2(x2)(i) with a = conj(x1), b = x2.
cplx atom_gram(PoleAtom::Kind k1, cplx a, PoleAtom::Kind k2, cplx b);

// Common height 2 pi n / log p_min so every prime contributes about n poles per side; -1
// when the spec has no prime.
double pole_height(const FactorSpec& spec, int n);

// Spectrum of sum c |v><w| over the atoms: sigma(sqrt(G_u) sqrt(G_w)).
SpectralProfile pole_space_profile(const std::vector<PoleAtom>& atoms, int truncation_size);
SpectralProfile pole_space_profile(const FactorSpec& spec, int n, int arch_terms = 40);

}  // namespace qh
