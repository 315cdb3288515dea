// band.hpp — single-excitation analytic layer on the infinite lattice
//
// Band [-2J, 2J]. S(z) = sqrt(z-2J) sqrt(z+2J) (principal factors) has its cut
// exactly on the band and S ~ z at infinity; y(z) = (-z + S)/(2J) is the
// |y| < 1 inverse of the dispersion, y = e^{ik} with Im k > 0 on the physical
// sheet. Parity channels sigma = +/- (mirror about the bond center):
//   Sigma_sigma(z) = g^2 (1 + sigma y^d) / S,   d = emitter spacing.
// Second sheet: S -> -S, y -> 1/y (continuation of the E+i0 boundary values
// downward through the cut).

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "duodecay/common.hpp"
#include "duodecay/filon.hpp"
#include "duodecay/params.hpp"

namespace duodecay::onex {

enum class Sheet { physical, second };

struct Channel {
    double J = 1.0, g = 0.3, delta = 0.0;
    int d = 1;       // emitter spacing
    int sigma = +1;  // mirror parity

    std::array<double, 2> branch_points() const { return {-2.0 * J, 2.0 * J}; }

    cplx S(cplx z, Sheet sheet = Sheet::physical) const {
        const cplx s = std::sqrt(z - 2.0 * J) * std::sqrt(z + 2.0 * J);
        return sheet == Sheet::physical ? s : -s;
    }
    cplx y(cplx z, Sheet sheet = Sheet::physical) const {
        const cplx s = std::sqrt(z - 2.0 * J) * std::sqrt(z + 2.0 * J);
        const cplx yp = (-z + s) / (2.0 * J);
        return sheet == Sheet::physical ? yp : 1.0 / yp;
    }
    // k(z) with Im k > 0 on the physical sheet
    cplx wavenumber(cplx z, Sheet sheet = Sheet::physical) const {
        return -iu * std::log(y(z, sheet));
    }

    void check_off_branch_points(cplx z) const {
        if (z == cplx{2.0 * J, 0.0} || z == cplx{-2.0 * J, 0.0})
            throw std::invalid_argument(
                "self_energy: z at a branch point; evaluate as a limit instead");
    }

    cplx self_energy(cplx z, Sheet sheet = Sheet::physical) const {
        check_off_branch_points(z);
        const cplx s = S(z, sheet), yy = y(z, sheet);
        return g * g * (1.0 + static_cast<double>(sigma) * std::pow(yy, d)) / s;
    }
    cplx self_energy_derivative(cplx z, Sheet sheet = Sheet::physical) const {
        check_off_branch_points(z);
        const cplx s = S(z, sheet), yy = y(z, sheet);
        const cplx yd = std::pow(yy, d);
        const double sg = static_cast<double>(sigma);
        return g * g * (-sg * d * yd - (1.0 + sg * yd) * z / s) / (s * s);
    }

    // resolvent pole function D(z) = z - delta - Sigma(z) and its inverse
    cplx pole_function(cplx z, Sheet sheet = Sheet::physical) const {
        return z - delta - self_energy(z, sheet);
    }
    cplx green(cplx z, Sheet sheet = Sheet::physical) const {
        return 1.0 / pole_function(z, sheet);
    }

    // spectral density on the band, -Im G(E + i0)/pi
    double density(double E) const {
        return -green(cplx{E, 0.0}).imag() / pi;
    }
};

// d = 0 reference (a single emitter coupled to one cell): Sigma = g^2/S
inline cplx self_energy_site(cplx z, double J, double g) {
    Channel c;
    c.J = J;
    c.g = g;
    c.d = 0;
    c.sigma = +1;  // (1 + y^0)/S would double-count; use half of the d=0 formula
    c.check_off_branch_points(z);
    return g * g / c.S(z);
}

struct BoundState1 {
    double energy = 0.0;       // |E| > 2J
    int sigma = +1;
    double weight = 0.0;       // residue of G at the pole, in (0, 1]
    double localization = 0.0; // -1/ln|y(E)|, in sites
    double residual = 0.0;     // |E - delta - Sigma(E)|
};

// All real poles outside the band for one parity channel.
std::vector<BoundState1> find_bound_states_channel(const Channel& c);

// Both channels, for the model parameters (spec operation).
std::vector<BoundState1> find_bound_states_1exc(const model::ModelParams& p);

// Resonance pole of the second-sheet continuation, if a narrow one exists.
// Returns (pole a, residue of the continued spectral density).
std::optional<std::pair<cplx, cplx>> resonance_pole(const Channel& c,
                                                    double max_width = 0.6);

// Frozen spectral representation of one parity channel: bound poles plus the
// band cut of the emitter survival amplitude
//   A_sigma(t) = sum_b w_b e^{-i E_b t} + \int rho_sigma(E) e^{-i E t} dE.
class ChannelAmplitude {
public:
    static ChannelAmplitude build(const Channel& c);

    cplx operator()(double t) const { return eval(t, 0); }
    cplx eval(double t, int derivative_order) const;  // order 0, 1, 2

    const std::vector<BoundState1>& bound_states() const { return bound_; }
    double cut_weight() const { return cut_weight_; }
    double completeness() const;  // sum of weights + cut weight (should be 1)
    double quadrature_error() const { return quad_err_; }
    const Channel& channel() const { return chan_; }

private:
    Channel chan_;
    std::vector<BoundState1> bound_;
    num::CutRep cut_, cut_w1_, cut_w2_;  // density, x(-i E), x(-i E)^2
    double cut_weight_ = 0.0;
    double quad_err_ = 0.0;
};

}  // namespace duodecay::onex
