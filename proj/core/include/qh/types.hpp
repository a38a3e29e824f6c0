#pragma once

#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qh {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = std::numbers::egamma;

// A point closer than this to a known pole is treated as the pole itself.
inline constexpr double pole_threshold = 1e-9;

class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Laurent data at a pole: coeffs[j] multiplies (z - location)^-(j+1).
struct PoleDatum {
    cplx location;
    int order = 1;
    std::vector<cplx> coeffs;

    cplx residue() const { return coeffs.empty() ? cplx{} : coeffs[0]; }
};

class PoleError : public Error {
public:
    PoleError(const std::string& message, PoleDatum datum)
        : Error("pole", message), datum_(std::move(datum)) {}
    const PoleDatum& datum() const noexcept { return datum_; }
    // Preimage of the pole in the unit disk, filled in by the conformal layer.
    std::optional<cplx> disk_point;

private:
    PoleDatum datum_;
};

class ZeroError : public Error {
public:
    ZeroError(const std::string& message, cplx location)
        : Error("zero", message), location_(location) {}
    cplx location() const noexcept { return location_; }

private:
    cplx location_;
};

// A value produced by a truncated series together with an estimate of what was cut off.
struct SeriesValue {
    cplx value;
    double tail_bound = 0.0;
    bool converged = true;
};

}  // namespace qh
