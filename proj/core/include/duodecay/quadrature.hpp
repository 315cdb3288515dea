// quadrature.hpp — adaptive Gauss–Kronrod panels for complex-valued integrands

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include "duodecay/common.hpp"

namespace duodecay::num {

struct QuadResult {
    cplx value{0.0, 0.0};
    double error = 0.0;  // absolute error estimate
    long evals = 0;
    bool converged = false;
};

namespace detail {
// 15-point Kronrod nodes on [0,1]-half (symmetric), 7-point Gauss embedded
inline constexpr std::array<double, 8> kGK15_x = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr std::array<double, 8> kGK15_wk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> kGK15_wg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b;
    cplx value;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

inline Panel gk15(const std::function<cplx(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx ik{0, 0}, ig{0, 0};
    for (int j = 0; j < 8; ++j) {
        const double dx = h * kGK15_x[j];
        cplx fv = f(c - dx);
        if (j < 7) fv += f(c + dx);
        ik += kGK15_wk[j] * fv;
        if (j % 2 == 1) ig += kGK15_wg[j / 2] * fv;
    }
    ik *= h;
    ig *= h;
    const double err = std::abs(ik - ig);
    return {a, b, ik, err};
}
}  // namespace detail

// Adaptive GK15 on [a, b] with global error control.
inline QuadResult integrate(const std::function<cplx(double)>& f, double a, double b,
                            double abs_tol = 1e-10, double rel_tol = 1e-10,
                            int max_panels = 2000) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<detail::Panel> heap;
    detail::Panel p0 = detail::gk15(f, a, b);
    cplx total = p0.value;
    double errsum = p0.err;
    heap.push(p0);
    out.evals = 15;
    int n = 1;
    while (n < max_panels) {
        const double tol = std::max(abs_tol, rel_tol * std::abs(total));
        if (errsum <= tol) break;
        detail::Panel worst = heap.top();
        heap.pop();
        const double m = 0.5 * (worst.a + worst.b);
        if (!(m > worst.a && m < worst.b)) {  // interval exhausted
            heap.push(worst);
            break;
        }
        detail::Panel l = detail::gk15(f, worst.a, m);
        detail::Panel r = detail::gk15(f, m, worst.b);
        total += l.value + r.value - worst.value;
        errsum += l.err + r.err - worst.err;
        heap.push(l);
        heap.push(r);
        out.evals += 30;
        ++n;
    }
    out.value = total;
    out.error = errsum;
    out.converged = errsum <= std::max(abs_tol, rel_tol * std::abs(total));
    return out;
}

// Integrates across an ordered breakpoint list, adapting within each piece.
inline QuadResult integrate_segmented(const std::function<cplx(double)>& f,
                                      const std::vector<double>& breaks,
                                      double abs_tol = 1e-10, double rel_tol = 1e-10,
                                      int max_panels_per_piece = 2000) {
    QuadResult out;
    out.converged = true;
    if (breaks.size() < 2) return out;
    const double piece_tol = abs_tol / std::max<std::size_t>(1, breaks.size() - 1);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        QuadResult r = integrate(f, breaks[i], breaks[i + 1], piece_tol, rel_tol,
                                 max_panels_per_piece);
        out.value += r.value;
        out.error += r.error;
        out.evals += r.evals;
        out.converged = out.converged && r.converged;
    }
    return out;
}

// Gauss–Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

}  // namespace duodecay::num
