#include "qh/special.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace qh {

namespace {

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_c = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double log_sqrt_2pi = 0.5 * std::log(2.0 * pi);

cplx lanczos_log_gamma(cplx z) {
    // z has Re z >= 1/2 here
    z -= 1.0;
    cplx a = lanczos_c[0];
    for (std::size_t i = 1; i < lanczos_c.size(); ++i) a += lanczos_c[i] / (z + static_cast<double>(i));
    const cplx t = z + lanczos_g + 0.5;
    return log_sqrt_2pi + (z + 0.5) * std::log(t) - t + std::log(a);
}

void check_gamma_pole(cplx z) {
    if (z.real() > 0.5) return;
    const double n = std::round(z.real());
    if (std::abs(z - cplx(n, 0.0)) < pole_threshold) {
        std::ostringstream msg;
        msg << "Gamma has a pole at " << n;
        const double sign = (static_cast<long>(-n) % 2 == 0) ? 1.0 : -1.0;
        throw PoleError(msg.str(), PoleDatum{cplx(n, 0.0), 1, {cplx(sign / std::tgamma(1.0 - n), 0.0)}});
    }
}

}  // namespace

cplx log_sin_pi(cplx z) {
    // sin(pi z) = e^{-i pi z}(e^{2 i pi z} - 1)/(2i) for Im z >= 0, and the conjugate otherwise
    if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
    const cplx i(0.0, 1.0);
    const cplx e = std::exp(2.0 * i * pi * z);
    return -i * pi * z + std::log((e - 1.0) / (2.0 * i));
}

cplx log_cos_pi_half(cplx z) {
    // cos(pi z / 2) = sin(pi (z + 1) / 2)
    return log_sin_pi((z + 1.0) / 2.0);
}

cplx log_gamma(cplx z) {
    check_gamma_pole(z);
    if (z.real() >= 0.5) return lanczos_log_gamma(z);
    return std::log(pi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

cplx coth(cplx w) {
    if (std::abs(w) < 1e-4) {
        const cplx w2 = w * w;
        return 1.0 / w + w / 3.0 - w * w2 / 45.0 + 2.0 * w * w2 * w2 / 945.0;
    }
    // exp(-2w) form avoids overflow for large Re w
    if (w.real() >= 0.0) {
        const cplx e = std::exp(-2.0 * w);
        return (1.0 + e) / (1.0 - e);
    }
    const cplx e = std::exp(2.0 * w);
    return -(1.0 + e) / (1.0 - e);
}

std::vector<double> laguerre_table(int n, double a, double x) {
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    out[0] = 1.0;
    if (n >= 1) out[1] = 1.0 + a - x;
    for (int j = 1; j < n; ++j)
        out[j + 1] = ((2.0 * j + 1.0 + a - x) * out[j] - (j + a) * out[j - 1]) / (j + 1.0);
    return out;
}

}  // namespace qh
