// lattice_eigs.hpp — certified discrete eigenvalues of the lattice Hamiltonian
//
// Counts eigenvalues in an interval by LDL^T inertia and extracts each one by
// shifted inverse iteration, so "no missed, no spurious" statements about
// bound states are checkable without full diagonalization.

#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "duodecay/basis.hpp"
#include "duodecay/params.hpp"

namespace duodecay::lat {

struct GapEig {
    double energy = 0.0;
    double emitter_weight = 0.0;  // weight on emitter-bearing configurations
    double residual = 0.0;        // ||H v - E v||
    Eigen::VectorXd vec;
};

Eigen::SparseMatrix<double> sparse_hamiltonian(const model::ModelParams& p);

// Number of eigenvalues strictly below `shift`.
int eig_count_below(const Eigen::SparseMatrix<double>& H, double shift);

// All eigenvalues in (a, b), located by inertia bisection and refined by
// inverse iteration. `b - a` must not contain continuum bands.
std::vector<GapEig> eigs_in_interval(const Eigen::SparseMatrix<double>& H,
                                     const model::ModelParams& p, double a, double b);

// Emitter weight of a basis-space vector.
double emitter_weight(const Eigen::VectorXd& v, const model::Basis& b);

}  // namespace duodecay::lat
