// basis.hpp — excitation-sector bases and state vectors
//
// Sector 1 layout: [e1, e2, photon 0..L-1].
// Sector 2 layout: [ee], then emitter-photon (i, j) lexicographic, then
// symmetrized photon pairs (j, k) with j <= k, lexicographic. |j,k> for j < k
// is a_j^+ a_k^+ |0>; |j,j> is the doubly occupied state (a_j^+)^2/sqrt(2)|0>.

#pragma once

#include <cstddef>
#include <vector>

#include "duodecay/params.hpp"

namespace duodecay::model {

struct Basis {
    int sector = 2;
    int L = 0;

    static Basis build(const ModelParams& p) {
        p.validate();
        Basis b;
        b.sector = p.n_excitations;
        b.L = p.L;
        return b;
    }

    std::size_t dim() const {
        const std::size_t Ls = static_cast<std::size_t>(L);
        if (sector == 1) return 2 + Ls;
        return 1 + 2 * Ls + Ls * (Ls + 1) / 2;
    }

    // --- sector 1 ---
    std::size_t idx_emitter(int i) const { return static_cast<std::size_t>(i); }  // i = 0, 1
    std::size_t idx_photon(int j) const { return 2 + static_cast<std::size_t>(j); }

    // --- sector 2 ---
    std::size_t idx_ee() const { return 0; }
    std::size_t idx_e_ph(int i, int j) const {
        return 1 + static_cast<std::size_t>(i) * L + static_cast<std::size_t>(j);
    }
    // j <= k required
    std::size_t idx_pair(int j, int k) const {
        const std::size_t Ls = static_cast<std::size_t>(L);
        const std::size_t jj = static_cast<std::size_t>(j);
        return 1 + 2 * Ls + jj * Ls - jj * (jj - 1) / 2 + static_cast<std::size_t>(k - j);
    }

    bool operator==(const Basis& o) const { return sector == o.sector && L == o.L; }
};

struct QuantumState {
    Basis basis;
    std::vector<cplx> amp;
    double time = 0.0;  // in 1/J units

    static QuantumState zero(const Basis& b) {
        QuantumState s;
        s.basis = b;
        s.amp.assign(b.dim(), cplx{0.0, 0.0});
        return s;
    }
    double norm() const { return std::sqrt(norm2(amp)); }
};

// |ee>: both emitters excited (sector 2)
inline QuantumState state_ee(const Basis& b) {
    require(b.sector == 2, "state_ee: needs the two-excitation sector");
    QuantumState s = QuantumState::zero(b);
    s.amp[b.idx_ee()] = 1.0;
    return s;
}

// (|e1> + sigma |e2>)/sqrt(2) (sector 1), sigma = +1 or -1
inline QuantumState state_emitter_parity(const Basis& b, int sigma) {
    require(b.sector == 1, "state_emitter_parity: needs the one-excitation sector");
    QuantumState s = QuantumState::zero(b);
    const double r = 1.0 / std::sqrt(2.0);
    s.amp[b.idx_emitter(0)] = r;
    s.amp[b.idx_emitter(1)] = sigma >= 0 ? r : -r;
    return s;
}

}  // namespace duodecay::model
