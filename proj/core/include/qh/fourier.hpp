#pragma once

#include <string>
#include <vector>

#include "qh/conformal.hpp"
#include "qh/line_quadrature.hpp"
#include "qh/poles.hpp"

namespace qh {

// Fourier coefficients c_k of a boundary symbol for k in [k_min, k_max]; c_{-k} = a_{-k}
// multiplies e^{-ik theta}.  error[k] is the method's own estimate.
struct CoefficientStream {
    enum class Method { ResidueSeries, Quadrature };

    FactorSpec spec;
    Method method = Method::Quadrature;
    std::string detail;  // e.g. "dft", "line", "residue"
    int k_min = 0;
    int k_max = 0;
    std::vector<cplx> values;
    std::vector<double> error;
    bool slow_convergence = false;

    bool covers(int k) const { return k >= k_min && k <= k_max; }
    cplx at(int k) const;
    double err(int k) const;
};

std::string method_name(CoefficientStream::Method m);

// Discrete Fourier transform of grid samples, with the offset phase folded back in.  The
// error estimate is the difference to the same transform on the even-indexed half grid.
CoefficientStream quadrature_coeffs(const std::vector<cplx>& samples, const BoundaryGrid& grid,
                                    int k_min, int k_max, const FactorSpec& spec = FactorSpec::unit());

// Graded Gauss-Legendre quadrature on the critical line.
CoefficientStream line_quadrature_coeffs(const FactorSpec& spec, int k_min, int k_max,
                                         const LineQuadratureOptions& options = {});

struct ResidueOptions {
    int arch_terms = 40;
    int prime_terms = 10000;
    bool tail_correction = true;  // closed-form remainder for a single rho_p
};

// Residue-series coefficients a_{-k}, k = 1..k_max, stored at index -k.
CoefficientStream residue_coeffs(const FactorSpec& spec, int k_max, const ResidueOptions& options = {});

// Coefficients of the pole part of rho(spec) composed with psi: DFT on the grid for
// archimedean and Gauss specs, line quadrature with periodic tail for a single rho_p.
CoefficientStream pole_part_coeffs(const FactorSpec& spec, int k_min, int k_max, int truncation = 40,
                                   const BoundaryGrid& grid = BoundaryGrid());

struct StreamComparison {
    int k_min = 0;
    int k_max = 0;
    std::vector<double> diff;
    double max_diff = 0.0;
    int argmax = 0;
    bool within_bounds = true;  // every |diff| <= err_a + err_b
};

StreamComparison compare_streams(const CoefficientStream& a, const CoefficientStream& b);

// Principal part at a pole z0 = psi(x0) transported to the disk: a_{-k} picks up
// sum_i D_i C(k-1, i-1) x0^{k-i}.
std::vector<cplx> disk_principal_part(const ProductPole& pole);

// Closed-form remainder of the single-prime series beyond |n| > n_terms, for a_{-k}.
cplx prime_series_tail(long p, int n_terms, int k);

}  // namespace qh
