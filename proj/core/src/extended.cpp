#include "qh/extended.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>

namespace qh::extended {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;
using Complex = boost::multiprecision::cpp_complex_50;

const Real& pi_x() {
    static const Real v = boost::math::constants::pi<Real>();
    return v;
}

// log Gamma for Re z large via Stirling with 30 Bernoulli corrections
Complex stirling(const Complex& z) {
    static const std::vector<Real> b = [] {
        std::vector<Real> out;
        for (int k = 1; k <= 30; ++k) out.push_back(boost::math::bernoulli_b2n<Real>(k));
        return out;
    }();
    Complex s = (z - Real(0.5)) * log(z) - z + log(2 * pi_x()) / 2;
    Complex zpow = z;
    const Complex z2 = z * z;
    for (int k = 1; k <= 30; ++k) {
        s += b[k - 1] / (Real(2 * k) * Real(2 * k - 1) * zpow);
        zpow *= z2;
    }
    return s;
}

Complex log_gamma_x(Complex z) {
    const Real half(0.5);
    if (z.real() < half) {
        // reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
        return log(pi_x()) - log(sin(pi_x() * z)) - log_gamma_x(Complex(1) - z);
    }
    Complex shift(0);
    while (z.real() < Real(40)) {
        shift += log(z);
        z += Real(1);
    }
    return stirling(z) - shift;
}

Complex to_x(cplx z) { return Complex(Real(z.real()), Real(z.imag())); }
cplx from_x(const Complex& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace

cplx log_gamma(cplx z) { return from_x(log_gamma_x(to_x(z))); }

cplx rho_inf(cplx z) {
    const Complex zx = to_x(z);
    const Complex one(1);
    const Complex e = (Real(0.5) - zx) * log(pi_x()) + log_gamma_x(zx / Real(2)) -
                      log_gamma_x((one - zx) / Real(2));
    return from_x(exp(e));
}

cplx rho_prime(long p, cplx z) {
    const Complex zx = to_x(z);
    const Real lp = log(Real(p));
    const Complex one(1);
    return from_x((one - exp((zx - one) * lp)) / (one - exp(-zx * lp)));
}

}  // namespace qh::extended
