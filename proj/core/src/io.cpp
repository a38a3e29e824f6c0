#include "qh/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "qh/parallel.hpp"

namespace qh {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void write_stream_csv(std::ostream& os, const CoefficientStream& stream) {
    os << "k,re,im,err\n";
    for (int k = stream.k_min; k <= stream.k_max; ++k) {
        const cplx c = stream.at(k);
        os << k << ',' << num(c.real()) << ',' << num(c.imag()) << ',' << num(stream.err(k)) << '\n';
    }
}

void write_matrix_csv(std::ostream& os, const DenseMatrix& m) {
    os << "i,j,re,im\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            os << i << ',' << j << ',' << num(m(i, j).real()) << ',' << num(m(i, j).imag()) << '\n';
}

void write_spectrum_csv(std::ostream& os, const SpectralProfile& profile) {
    os << "k,sigma\n";
    for (std::size_t k = 0; k < profile.singular_values.size(); ++k)
        os << k + 1 << ',' << num(profile.singular_values[k]) << '\n';
}

std::vector<cplx> figure_curve(const FactorSpec& spec, const BoundaryGrid& grid, bool pole_part_only, int truncation) {
    std::vector<cplx> out(static_cast<std::size_t>(grid.size()));
    parallel_for(grid.size(), [&](int j) {
        const cplx z(0.5, -1.0 / std::tan(grid.theta(j) / 2.0));
        out[j] = pole_part_only ? pole_part(spec, z, truncation).value : rho(spec, z);
    });
    return out;
}

void write_svg_polyline(std::ostream& os, const std::vector<cplx>& points, int size, const std::string& title) {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    if (!points.empty()) {
        xmin = xmax = points[0].real();
        ymin = ymax = points[0].imag();
    }
    for (const auto& p : points) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
    const double pad = 0.05 * span;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\""
       << num(xmin - pad) << ' ' << num(-(ymax + pad)) << ' ' << num(span + 2 * pad) << ' ' << num(span + 2 * pad)
       << "\">\n";
    if (!title.empty()) os << "<title>" << title << "</title>\n";
    os << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"" << num(span / 400.0) << "\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) os << ' ';
        // SVG y axis points down
        os << num(points[i].real()) << ',' << num(-points[i].imag());
    }
    os << "\"/>\n</svg>\n";
}

}  // namespace qh
