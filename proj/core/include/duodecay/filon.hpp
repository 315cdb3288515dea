// filon.hpp — frozen spectral representations of band integrals
//
// A CutRep stores a density rho on a union of panels as Legendre expansions,
// plus a list of stripped simple poles. eval(tau) then returns
//   ∫ rho(x) e^{-i tau x} dx  +  Σ_p r_p Phi(a_p; tau; X0, X1)
// exactly in tau (Filon–Legendre kernels 2(-i)^n j_n(tau h) per panel), so one
// build serves every time sample.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "duodecay/common.hpp"
#include "duodecay/phi_kernel.hpp"
#include "duodecay/quadrature.hpp"

namespace duodecay::num {

// j_0..j_{n-1}(theta) for theta >= 0; Miller's downward recurrence below the
// stability threshold, upward above it.
inline void sph_bessel_array(int n, double theta, double* out) {
    if (theta < 1e-8) {
        // series j_k ~ theta^k/(2k+1)!! (1 - theta^2/(2(2k+3)))
        double pw = 1.0, df = 1.0;
        for (int k = 0; k < n; ++k) {
            out[k] = pw / df * (1.0 - theta * theta / (2.0 * (2.0 * k + 3.0)));
            pw *= theta;
            df *= 2.0 * k + 3.0;
        }
        return;
    }
    const double j0 = std::sin(theta) / theta;
    if (n == 1) {
        out[0] = j0;
        return;
    }
    const double j1 = j0 / theta - std::cos(theta) / theta;
    if (theta > n + 12) {  // upward recurrence is stable here
        out[0] = j0;
        out[1] = j1;
        for (int k = 1; k + 1 < n; ++k)
            out[k + 1] = (2.0 * k + 1.0) / theta * out[k] - out[k - 1];
        return;
    }
    const int start = n + 14 + static_cast<int>(theta);
    double jpp = 0.0, jp = 1e-30;  // j_{k+2}, j_{k+1}
    std::vector<double> tmp(n, 0.0);
    for (int k = start; k >= 0; --k) {
        const double jk = (2.0 * k + 3.0) / theta * jp - jpp;
        jpp = jp;
        jp = jk;
        if (k < n) tmp[k] = jk;
        if (std::abs(jk) > 1e250) {  // rescale to avoid overflow
            const double s = 1e-250;
            jpp *= s;
            jp *= s;
            for (int m = std::max(0, k); m < n; ++m) tmp[m] *= s;
        }
    }
    const double scale = j0 / jp;
    for (int k = 0; k < n; ++k) out[k] = tmp[k] * scale;
}

struct FilonPanel {
    double mid = 0.0, half = 0.0;
    std::vector<cplx> coef;  // Legendre coefficients of the density
};

struct CutRepOptions {
    int order = 20;          // Legendre order per panel
    double rel_tol = 1e-11;  // coefficient-tail threshold relative to scale
    int max_depth = 22;
    double scale = 0.0;      // density magnitude scale; 0 = detect
};

class CutRep {
public:
    // density must already have the listed poles subtracted if they are to be
    // stripped; the poles are re-added through the exact Phi kernel at eval.
    static CutRep build(const std::function<cplx(double)>& density,
                        std::vector<double> breakpoints,
                        std::vector<std::pair<cplx, cplx>> poles = {},  // (a, residue)
                        CutRepOptions opts = {}) {
        if (breakpoints.size() < 2)
            throw std::invalid_argument("CutRep: need at least one segment");
        std::sort(breakpoints.begin(), breakpoints.end());
        breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end(),
                                      [](double a, double b) { return std::abs(a - b) < 1e-15; }),
                          breakpoints.end());
        CutRep rep;
        rep.x_lo_ = breakpoints.front();
        rep.x_hi_ = breakpoints.back();
        rep.poles_ = std::move(poles);
        const int n = opts.order;
        std::vector<double> gx, gw;
        gauss_legendre(n, gx, gw);
        // Legendre values P_k(s_i)
        std::vector<double> P(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i) {
            double p0 = 1.0, p1 = gx[i];
            P[i] = 1.0;
            if (n > 1) P[n + i] = p1;
            for (int k = 1; k + 1 < n; ++k) {
                const double p2 = ((2.0 * k + 1.0) * gx[i] * p1 - k * p0) / (k + 1.0);
                P[(k + 1) * static_cast<std::size_t>(n) + i] = p2;
                p0 = p1;
                p1 = p2;
            }
        }
        double scale = opts.scale;
        if (scale == 0.0) {
            for (std::size_t s = 0; s + 1 < breakpoints.size(); ++s) {
                const double m = 0.5 * (breakpoints[s] + breakpoints[s + 1]);
                scale = std::max(scale, std::abs(density(m)));
            }
            if (scale == 0.0) scale = 1.0;
        }

        struct Seg {
            double a, b;
            int depth;
        };
        std::vector<Seg> stack;
        for (std::size_t s = breakpoints.size() - 1; s >= 1; --s)
            stack.push_back({breakpoints[s - 1], breakpoints[s], 0});
        std::vector<cplx> fval(n), coef(n);
        while (!stack.empty()) {
            const Seg seg = stack.back();
            stack.pop_back();
            const double mid = 0.5 * (seg.a + seg.b), half = 0.5 * (seg.b - seg.a);
            for (int i = 0; i < n; ++i) fval[i] = density(mid + half * gx[i]);
            for (int k = 0; k < n; ++k) {
                cplx c{0.0, 0.0};
                for (int i = 0; i < n; ++i) c += gw[i] * P[k * static_cast<std::size_t>(n) + i] * fval[i];
                coef[k] = (2.0 * k + 1.0) / 2.0 * c;
            }
            double tail = 0.0;
            for (int k = n - 3; k < n; ++k) tail += std::abs(coef[k]) / (2.0 * k + 1.0);
            if (tail > opts.rel_tol * scale && seg.depth < opts.max_depth) {
                stack.push_back({mid, seg.b, seg.depth + 1});
                stack.push_back({seg.a, mid, seg.depth + 1});
                continue;
            }
            FilonPanel p;
            p.mid = mid;
            p.half = half;
            p.coef = coef;
            rep.panels_.push_back(std::move(p));
        }
        std::sort(rep.panels_.begin(), rep.panels_.end(),
                  [](const FilonPanel& a, const FilonPanel& b) { return a.mid < b.mid; });
        return rep;
    }

    // ∫ rho(x) e^{-i tau x} dx plus stripped-pole kernels
    cplx eval(double tau) const {
        cplx total{0.0, 0.0};
        std::vector<double> jn;
        for (const auto& p : panels_) {
            const int n = static_cast<int>(p.coef.size());
            jn.resize(n);
            const double theta = tau * p.half;
            sph_bessel_array(n, std::abs(theta), jn.data());
            // kernel_n = 2 (-i)^n j_n(theta); j_n(-t) = (-1)^n j_n(t)
            cplx acc{0.0, 0.0};
            cplx in{1.0, 0.0};
            const cplx step = theta >= 0 ? -iu : iu;
            for (int k = 0; k < n; ++k) {
                acc += p.coef[k] * (2.0 * jn[k]) * in;
                in *= step;
            }
            total += p.half * std::exp(-iu * tau * p.mid) * acc;
        }
        for (const auto& [a, r] : poles_)
            total += r * phi_closed(a, tau, x_lo_, x_hi_, 0);
        return total;
    }

    std::size_t panel_count() const { return panels_.size(); }
    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }
    const std::vector<std::pair<cplx, cplx>>& poles() const { return poles_; }

private:
    std::vector<FilonPanel> panels_;
    std::vector<std::pair<cplx, cplx>> poles_;
    double x_lo_ = 0.0, x_hi_ = 0.0;
};

}  // namespace duodecay::num
