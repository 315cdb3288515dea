// expint.hpp — principal-branch exponential integral E1 for complex arguments
//
// e1_scaled(z) = e^z E1(z) is the workhorse: it stays O(1/z) for large |z|,
// so phase-kernel products never overflow.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "duodecay/common.hpp"

namespace duodecay::num {

namespace detail {
inline constexpr double kEulerGamma = 0.57721566490153286061;

// E1(z) = -gamma - ln z + sum_{k>=1} (-1)^{k+1} z^k / (k k!)
inline cplx e1_series(cplx z) {
    cplx sum{0.0, 0.0};
    cplx term{1.0, 0.0};
    for (int k = 1; k <= 120; ++k) {
        term *= -z / static_cast<double>(k);
        const cplx add = -term / static_cast<double>(k);
        sum += add;
        if (std::abs(add) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return -kEulerGamma - std::log(z) + sum;
}

// e^{-w} Ei(w) for |w| >= 48 by the asymptotic series sum_k k!/w^{k+1},
// truncated at the smallest term (error ~ e^{-|w|}).
inline cplx ei_scaled_asymptotic(cplx w) {
    cplx sum{0.0, 0.0};
    cplx term = 1.0 / w;
    double prev = std::abs(term);
    for (int k = 0; k < 80; ++k) {
        sum += term;
        term *= static_cast<double>(k + 1) / w;
        const double mag = std::abs(term);
        if (mag >= prev) break;  // past the optimal truncation point
        prev = mag;
        if (mag < 1e-20 * std::abs(sum)) break;
    }
    return sum;
}

// Ei(w) ascending series (cancellation-free near the positive real axis):
// Ei(w) = gamma + ln w + sum_{k>=1} w^k / (k k!)
inline cplx ei_series(cplx w) {
    cplx sum{0.0, 0.0};
    cplx term{1.0, 0.0};
    for (int k = 1; k <= 900; ++k) {
        term *= w / static_cast<double>(k);
        const cplx add = term / static_cast<double>(k);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum) && k > std::abs(w)) break;
    }
    return kEulerGamma + std::log(w) + sum;
}

// Modified Lentz continued fraction for e^z E1(z):
// E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(...))))
inline cplx e1_scaled_contfrac(cplx z) {
    const double tiny = 1e-290;
    cplx b = z + 1.0;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int n = 1; n <= 600; ++n) {
        const cplx a = -static_cast<double>(n) * static_cast<double>(n);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        if (c == cplx{0.0, 0.0}) c = tiny;
        const cplx delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h;
}
}  // namespace detail

// e^z E1(z), principal branch (cut on the negative real axis).
inline cplx e1_scaled(cplx z) {
    if (z == cplx{0.0, 0.0})
        throw std::invalid_argument("e1_scaled: argument at the logarithmic singularity");
    const double az = std::abs(z);
    if (az <= 4.0) return std::exp(z) * detail::e1_series(z);
    if (z.real() < 0.0 && std::abs(z.imag()) < 0.5 * (-z.real())) {
        // Near the cut: E1(z) = -Ei(-z) - i pi sgn(Im z)
        const double s = std::signbit(z.imag()) ? -1.0 : 1.0;
        const cplx w = -z;
        cplx eiw_scaled;  // e^{-w} Ei(w)
        if (std::abs(w) >= 48.0)
            eiw_scaled = detail::ei_scaled_asymptotic(w);
        else
            eiw_scaled = std::exp(-w) * detail::ei_series(w);
        // e^z E1(z) = -e^{-w} Ei(w) - i pi s e^{z}; |e^z| <= 1 here
        return -eiw_scaled - s * iu * pi * std::exp(z);
    }
    return detail::e1_scaled_contfrac(z);
}

// E1(z). Overflows for Re z << 0; prefer e1_scaled in kernel products.
inline cplx e1(cplx z) { return std::exp(-z) * e1_scaled(z); }

}  // namespace duodecay::num
