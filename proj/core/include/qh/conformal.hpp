#pragma once

#include <iosfwd>
#include <vector>

#include "qh/factors.hpp"

namespace qh {

// psi(v) = 1/2 + (v+1)/(v-1) maps the unit disk onto Re z < 1/2, the circle onto the
// critical line; psi_inv(z) = (2z+1)/(2z-3).
cplx psi(cplx v);
cplx psi_inv(cplx z);

// kappa = rho o psi.  Pole errors carry the disk preimage in PoleError::disk_point.
cplx kappa(const FactorSpec& spec, cplx v);

// Images in the disk of the poles -2n of rho_inf and 2 pi i n / log p of rho_p.
double x_inf(int n);
cplx x_prime(long p, long n);

// Uniform grid theta_j = 2 pi (j + offset) / n_points on the unit circle.
class BoundaryGrid {
public:
    explicit BoundaryGrid(int n_points = 1 << 14, double offset = 0.5);

    int size() const { return n_; }
    double offset() const { return offset_; }
    double theta(int j) const;
    cplx point(int j) const;

private:
    int n_;
    double offset_;
};

std::vector<cplx> sample_boundary(const FactorSpec& spec, const BoundaryGrid& grid);

// CSV with header "j,theta,re,im".
void write_grid_csv(std::ostream& os, const BoundaryGrid& grid, const std::vector<cplx>& values);

}  // namespace qh
