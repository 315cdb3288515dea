// common.hpp — shared aliases and small numeric helpers

#pragma once

#include <complex>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace duodecay {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx iu{0.0, 1.0};

inline bool nearly_equal(double a, double b, double tol) noexcept {
    return std::abs(a - b) <= tol;
}

inline double sqr(double x) noexcept { return x * x; }
inline double norm2(const std::vector<cplx>& v) noexcept {
    double s = 0.0;
    for (const auto& a : v) s += std::norm(a);
    return s;
}

// Throwing check for user-facing preconditions
inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace duodecay
