#include "qh/conformal.hpp"

#include <cmath>
#include <ostream>

#include "qh/parallel.hpp"

namespace qh {

cplx psi(cplx v) {
    if (std::abs(v - 1.0) < 1e-300) throw Error("infinity", "psi(1) is the point at infinity");
    return 0.5 + (v + 1.0) / (v - 1.0);
}

cplx psi_inv(cplx z) {
    if (std::abs(z - 1.5) < 1e-300) throw Error("infinity", "psi_inv(3/2) is the point at infinity");
    return (2.0 * z + 1.0) / (2.0 * z - 3.0);
}

cplx kappa(const FactorSpec& spec, cplx v) {
    try {
        return rho(spec, psi(v));
    } catch (PoleError& e) {
        e.disk_point = psi_inv(e.datum().location);
        throw;
    }
}

double x_inf(int n) { return 1.0 - 4.0 / (4.0 * n + 3.0); }

cplx x_prime(long p, long n) {
    const double L = std::log(static_cast<double>(p));
    const double a = 4.0 * pi * static_cast<double>(n);
    return cplx(a, -L) / cplx(a, 3.0 * L);
}

BoundaryGrid::BoundaryGrid(int n_points, double offset) : n_(n_points), offset_(offset) {
    if (n_points < 2 || (n_points & (n_points - 1)) != 0)
        throw Error("domain", "grid size must be a power of two");
    if (!(offset > 0.0 && offset < 1.0)) throw Error("domain", "grid offset must lie in (0,1)");
}

double BoundaryGrid::theta(int j) const { return 2.0 * pi * (j + offset_) / n_; }

cplx BoundaryGrid::point(int j) const { return std::polar(1.0, theta(j)); }

std::vector<cplx> sample_boundary(const FactorSpec& spec, const BoundaryGrid& grid) {
    std::vector<cplx> out(static_cast<std::size_t>(grid.size()));
    parallel_for(grid.size(), [&](int j) {
        // on the circle (v+1)/(v-1) = -i cot(theta/2), so psi(v) = 1/2 - i cot(theta/2)
        const double t = grid.theta(j);
        out[j] = rho(spec, cplx(0.5, -1.0 / std::tan(t / 2.0)));
    });
    return out;
}

void write_grid_csv(std::ostream& os, const BoundaryGrid& grid, const std::vector<cplx>& values) {
    os << "j,theta,re,im\n";
    char buf[160];
    for (int j = 0; j < grid.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", j, grid.theta(j), values[j].real(), values[j].imag());
        os << buf;
    }
}

}  // namespace qh
