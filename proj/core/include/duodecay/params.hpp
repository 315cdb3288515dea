// params.hpp — physical model parameters and validation
//
// Conventions fixed once for the whole project: band-centered frame, photon
// dispersion w(k) = -2 J cos k (band = [-2J, 2J]), emitter detuning delta from
// the band center, excitation-conserving coupling g at the emitter cells.
// hbar = 1; times are in units of 1/J.

#pragma once

#include <cmath>
#include <string>

#include "duodecay/common.hpp"

namespace duodecay::model {

enum class Boundary { open, periodic };

struct ModelParams {
    double J = 1.0;       // hopping, > 0; sets the band half-width 2J
    double g = 0.3;       // emitter-photon coupling, >= 0
    double delta = 0.0;   // emitter frequency relative to band center
    int L = 41;           // odd lattice length, emitters centered
    int x1 = -1;          // left emitter cell; -1 = auto-center
    int spacing = 1;      // x2 = x1 + spacing; only spacing 1 is validated
    Boundary boundary = Boundary::open;
    int n_excitations = 2;

    int x1_resolved() const { return x1 >= 0 ? x1 : (L - spacing) / 2; }
    int x2_resolved() const { return x1_resolved() + spacing; }

    // True when the emitter geometry is the validated adjacent-cell one.
    bool geometry_validated() const { return spacing == 1; }

    void validate() const {
        require(J > 0.0, "invalid-model: J must be > 0");
        require(g >= 0.0, "invalid-model: g must be >= 0");
        require(L >= 3, "invalid-lattice: L must be >= 3");
        require(L % 2 == 1, "invalid-lattice: L must be odd");
        require(spacing >= 1, "invalid-model: emitter spacing must be >= 1");
        require(n_excitations == 1 || n_excitations == 2,
                "invalid-model: n_excitations must be 1 or 2");
        const int a = x1_resolved(), b = x2_resolved();
        require(0 <= a && a < b && b <= L - 1, "invalid-lattice: emitter cells out of range");
    }
};

// w(k) = -2 J cos k on k in (-pi, pi]
inline double dispersion(double k, const ModelParams& p) { return -2.0 * p.J * std::cos(k); }

// Largest time for which radiation from the emitters cannot have reached the
// open boundary (group velocity bound 2J, plus a safety margin in sites).
inline double light_cone_time(const ModelParams& p, int margin_sites = 8) {
    const int reach = std::min(p.x1_resolved(), p.L - 1 - p.x2_resolved());
    return std::max(0.0, (reach - margin_sites) / (2.0 * p.J));
}

}  // namespace duodecay::model
