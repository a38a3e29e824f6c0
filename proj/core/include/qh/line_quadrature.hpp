#pragma once

#include <functional>
#include <vector>

#include "qh/factors.hpp"

namespace qh {

// Fourier coefficients c_k = (1/2pi) \int kappa(e^{i theta}) e^{-ik theta} d theta rewritten on
// the critical line: with z = 1/2 + is one has theta(s) = pi + 2 atan(s) and
// d theta = 2 ds / (1 + s^2).  The integral over [-S, S] is done with Gauss-Legendre panels
// whose width follows the local oscillation rate; the part |s| > S is handled by a tail model.

struct LineQuadratureOptions {
    double half_width = 1000.0;  // S
    double resolution = 5.0;     // points per local wavelength, roughly
    int panel_order = 16;        // Gauss-Legendre points per panel (8, 16 or 32)
};

// A T-periodic function of s whose tail over |s| > S is summed with Euler-Maclaurin.
struct PeriodicPiece {
    std::function<cplx(double)> f;
    double period;
};

struct LineSymbol {
    std::function<cplx(double)> f;          // boundary values as a function of s
    std::function<double(double)> rate;     // bound on the phase rate |d arg f / ds|
    enum class Tail { Decaying, Periodic, Unresolved } tail = Tail::Decaying;
    std::vector<PeriodicPiece> pieces;      // Periodic: f is the sum of these
    // Decaying and Unresolved: estimate of the neglected |s| > S contribution, given S
    std::function<double(double)> tail_estimate;
};

// Builders for rho(spec) and for the pole part of rho(spec).
LineSymbol line_symbol(const FactorSpec& spec);
LineSymbol pole_part_line_symbol(const FactorSpec& spec, int truncation);

struct LineCoefficients {
    int k_min = 0;
    std::vector<cplx> values;
    std::vector<double> error;
    int nodes = 0;
};

LineCoefficients line_coefficients(const LineSymbol& symbol, int k_min, int k_max,
                                   const LineQuadratureOptions& options = {});

}  // namespace qh
