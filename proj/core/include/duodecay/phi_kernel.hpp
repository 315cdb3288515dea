// phi_kernel.hpp — the pole/segment kernel Phi(a; tau; x0, x1)
//
//   Phi = ∫_{x0}^{x1} e^{-i tau x} / (x - a) dx
//
// Closed form via the scaled exponential integral, with the branch-crossing
// correction when the pole's real part lies inside the segment. This is the
// exact kernel used on pole-proximate panels of every band integral.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "duodecay/common.hpp"
#include "duodecay/expint.hpp"
#include "duodecay/quadrature.hpp"

namespace duodecay::num {

// side: when a is exactly real and inside [x0, x1], selects the limit
// Im a -> side * 0+. Required there, ignored elsewhere.
inline cplx phi_closed(cplx a, double tau, double x0, double x1, int side = 0) {
    if (x0 == x1) return {0.0, 0.0};
    if (x0 > x1) return -phi_closed(a, tau, x1, x0, side);
    const bool inside = (x0 < a.real() && a.real() < x1);
    double im_sign = a.imag() > 0 ? 1.0 : (a.imag() < 0 ? -1.0 : 0.0);
    if (im_sign == 0.0 && inside) {
        if (side == 0)
            throw std::invalid_argument("phi_closed: pole on the path, side required");
        im_sign = side > 0 ? 1.0 : -1.0;
    }

    if (tau == 0.0) {
        auto lg = [&](double x) -> cplx {
            const cplx u = cplx{x, 0.0} - a;
            if (a.imag() != 0.0 || !inside) return std::log(u);
            // real pole with side prescription: u acquires -i*side*0
            if (u.real() > 0.0) return std::log(u.real());
            return std::log(-u.real()) - static_cast<double>(side) * iu * pi;
        };
        return lg(x1) - lg(x0);
    }

    const cplx z0 = iu * tau * (cplx{x0, 0.0} - a);
    const cplx z1 = iu * tau * (cplx{x1, 0.0} - a);
    if (z0 == cplx{0.0, 0.0} || z1 == cplx{0.0, 0.0})
        throw std::invalid_argument("phi_closed: pole at a segment endpoint");
    cplx val = std::exp(-iu * tau * x0) * e1_scaled(z0) -
               std::exp(-iu * tau * x1) * e1_scaled(z1);
    // The antiderivative -E1(i tau (x-a)) crosses the principal cut when the
    // path passes x = Re a with tau*Im a < 0.
    const double sgn_tau = tau > 0 ? 1.0 : -1.0;
    if (inside && sgn_tau * im_sign < 0.0)
        val += -sgn_tau * 2.0 * pi * iu * std::exp(-iu * tau * a);
    return val;
}

// Defining representation: direct quadrature with the exact singular part
// split off (the remaining integrand is entire).
inline QuadResult phi_defining(cplx a, double tau, double x0, double x1,
                               double abs_tol = 1e-12, int side = 0) {
    QuadResult out;
    if (x0 == x1) {
        out.converged = true;
        return out;
    }
    if (std::abs(tau * a.imag()) > 2.0) {
        // e^{-i tau a} is large or tiny; the pole is then far from the path on
        // the scale that matters and direct quadrature is accurate.
        return integrate([&](double x) { return std::exp(-iu * tau * x) / (cplx{x, 0.0} - a); },
                         x0, x1, abs_tol, 1e-13, 20000);
    }
    const cplx ea = std::exp(-iu * tau * a);
    auto smooth = [&](double x) -> cplx {
        const cplx u = cplx{x, 0.0} - a;
        const cplx num = std::exp(-iu * tau * x) - ea;
        if (std::abs(u) < 1e-14) return iu * (-tau) * ea;  // limit of the difference quotient
        return num / u;
    };
    out = integrate(smooth, x0, x1, abs_tol, 1e-13, 4000);
    out.value += ea * phi_closed(a, 0.0, x0, x1, side);
    return out;
}

}  // namespace duodecay::num
