// rootfind.hpp — bracketed scalar root finding (bisection-safeguarded Brent)

#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "duodecay/common.hpp"

namespace duodecay::num {

struct RootResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Brent's method on a sign-changing bracket [a, b].
inline RootResult brent(const std::function<double(double)>& f, double a, double b,
                        double xtol = 1e-14, int max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return {a, 0.0, 0, true};
    if (fb == 0.0) return {b, 0.0, 0, true};
    if (std::signbit(fa) == std::signbit(fb))
        throw std::invalid_argument("brent: endpoints do not bracket a root");

    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 1; it <= max_iter; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return {b, fb, it, true};
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa;
            d = b - a; e = d;
        }
    }
    return {b, fb, max_iter, false};
}

// Scans [lo, hi] on a uniform mesh and returns one refined root per sign change.
// skip(x0, x1) lets callers mask subintervals (e.g. across known poles).
inline std::vector<RootResult> scan_roots(
    const std::function<double(double)>& f, double lo, double hi, int mesh,
    double xtol = 1e-14,
    const std::function<bool(double, double)>& skip = nullptr) {
    std::vector<RootResult> roots;
    if (mesh < 2 || !(hi > lo)) return roots;
    const double h = (hi - lo) / mesh;
    double x0 = lo, f0 = f(x0);
    for (int i = 1; i <= mesh; ++i) {
        const double x1 = (i == mesh) ? hi : lo + i * h;
        const double f1 = f(x1);
        const bool masked = skip && skip(x0, x1);
        if (!masked && std::isfinite(f0) && std::isfinite(f1) &&
            std::signbit(f0) != std::signbit(f1)) {
            roots.push_back(brent(f, x0, x1, xtol));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

}  // namespace duodecay::num
