#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qh/operators.hpp"

namespace qh {

// CSV headers:
//   stream    k,re,im,err
//   matrix    i,j,re,im
//   spectrum  k,sigma
//   curve     j,theta,re,im   (same as write_grid_csv)
void write_stream_csv(std::ostream& os, const CoefficientStream& stream);
void write_matrix_csv(std::ostream& os, const DenseMatrix& m);
void write_spectrum_csv(std::ostream& os, const SpectralProfile& profile);

// Samples of pi kappa (pole_part = true) or kappa on the grid.
std::vector<cplx> figure_curve(const FactorSpec& spec, const BoundaryGrid& grid, bool pole_part, int truncation = 40);

// Minimal SVG: one closed polyline in a viewBox fitted to the points.
void write_svg_polyline(std::ostream& os, const std::vector<cplx>& points, int size = 600,
                        const std::string& title = "");

}  // namespace qh
