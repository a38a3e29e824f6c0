#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qh/operators.hpp"

namespace qh {

// u(F) = prod_{v in F} rho_v.
FactorSpec place_set_spec(const std::vector<Place>& places);

// Two-sided coefficients c_k, |k| <= K, of u(F) by line quadrature.
CoefficientStream two_sided_stream(const FactorSpec& spec, int K, const LineQuadratureOptions& options = {});

// Working basis e_j = D_F z^{-j-1}, j >= 0, of the range side, with D_F = prod_{p in F} (1 - p^{-z})
// (D_F = 1 when F = {inf}).  D_F is bounded above and below on the right half plane, so these
// span the same increasing sequence of closed subspaces up to equivalent norms.  u(F) e_j has the
// coefficients of w = u(F) D_F = rho_inf prod_p (1 - p^{z-1}) shifted by j.
struct SoninBasis {
    std::vector<Place> place_set;
    int n_max = 0;
    int rows_factor = 4;
    CoefficientStream symbol;  // w_k, k in [-(rows_factor n_max - 1), n_max - 1]
    DenseMatrix gram;          // <e_l, e_j>, n_max x n_max
};

SoninBasis sonin_basis(const std::vector<Place>& places, int n_max, int rows_factor = 4,
                       const LineQuadratureOptions& options = {});

struct SoninReport {
    std::vector<Place> place_set;
    int truncation = 0;
    int rows = 0;  // range rows kept of u(F) restricted to span(e_0..e_{n-1})
    double epsilon = 0.0;
    // columns: coefficient vectors xi in the basis e_j with sigma < eps, orthonormal for the
    // basis Gram, ordered by increasing sigma
    DenseMatrix kernel_basis;
    std::vector<double> kernel_sigma;
    std::vector<std::pair<int, int>> dimension_curve;  // (n, dim)
    std::optional<std::vector<double>> map_residuals;
    double min_sigma = 0.0;
};

// sigma are the singular values of the rows x n section, measured in the Gram norm of the domain.
SoninReport sonin_kernel(const SoninBasis& basis, int n, double eps);
SoninReport sonin_kernel(const std::vector<Place>& places, int n, double eps);
// Kernel at the largest size, with the dimension curve over the sweep (one shared basis).
SoninReport sonin_sweep(const std::vector<Place>& places, const std::vector<int>& sweep, double eps);

// Coefficients of D(F, F') o psi with D = prod_{p in F' \ F} (1 - p^{-z}), a Dirichlet polynomial
// whose terms are periodic on the critical line.
CoefficientStream d_multiplier_coeffs(const std::vector<Place>& F, const std::vector<Place>& F_prime, int k_min,
                                      int k_max, const LineQuadratureOptions& options = {});

struct MapCheck {
    std::vector<double> residuals;      // ||(1 - P) u(F') D xi|| / ||D xi|| over the section rows
    std::vector<double> image_norms;    // ||D xi||
    double gram_min_eigenvalue = 0.0;   // smallest eigenvalue of the Gram of the images
    std::vector<double> d_leakage;      // |d_k|, k = 1..n-1
};

// D(F, F') D_F e_j = D_{F'} z^{-j-1}, so the image of xi has the same coefficients in the basis
// of F'.  Uses the kernel vectors with the smallest sigma, at most `count`.
MapCheck inductive_map_check(const std::vector<Place>& F, const std::vector<Place>& F_prime,
                             const SoninReport& report, int count = 5);

}  // namespace qh
