// hamiltonian.hpp — matrix-free Hamiltonian action, dense assembly, symmetries

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "duodecay/basis.hpp"
#include "duodecay/params.hpp"

namespace duodecay::model {

// out := H in. Matrix-free, excitation-number conserving by construction.
void apply_hamiltonian(const ModelParams& p, const Basis& b, const cplx* in, cplx* out);

inline QuantumState apply_hamiltonian(const QuantumState& s, const ModelParams& p) {
    require(s.basis == Basis::build(p), "apply_hamiltonian: basis mismatch");
    QuantumState out = QuantumState::zero(s.basis);
    out.time = s.time;
    apply_hamiltonian(p, s.basis, s.amp.data(), out.amp.data());
    return out;
}

// Dense real-symmetric matrix assembled column by column from the action.
Eigen::MatrixXd dense_hamiltonian(const ModelParams& p);

// Mirror about the bond center (emitter swap + photon reflection). Exact on a
// periodic lattice for any L; throws for open boundaries, where an odd chain
// has no exact bond-centered mirror.
std::vector<std::size_t> mirror_permutation(const ModelParams& p, const Basis& b);

// Emitter-only swap (the "soft" partner of the mirror). Any boundary.
std::vector<std::size_t> emitter_swap_permutation(const ModelParams& p, const Basis& b);

inline QuantumState permute_state(const QuantumState& s, const std::vector<std::size_t>& perm) {
    QuantumState out = QuantumState::zero(s.basis);
    out.time = s.time;
    for (std::size_t i = 0; i < perm.size(); ++i) out.amp[perm[i]] = s.amp[i];
    return out;
}

// || P_odd psi || with P_odd = (1 - M)/2 for a permutation symmetry M
inline double odd_projection_norm(const QuantumState& s, const std::vector<std::size_t>& perm) {
    double acc = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        acc += std::norm(0.5 * (s.amp[i] - s.amp[perm[i]]));
    return std::sqrt(acc);
}

}  // namespace duodecay::model
