// propagate.hpp — convergence-controlled time evolution (dense and Krylov)

#pragma once

#include <string>
#include <vector>

#include "duodecay/basis.hpp"
#include "duodecay/hamiltonian.hpp"
#include "duodecay/params.hpp"

namespace duodecay::prop {

struct TimeGrid {
    double t_max = 10.0;  // 1/J units, t0 = 0
    int n_samples = 101;  // uniform spacing

    void validate() const {
        require(t_max > 0.0, "invalid-grid: t_max must be > 0");
        require(n_samples >= 2, "invalid-grid: n_samples must be >= 2");
    }
    double t(int i) const { return t_max * i / (n_samples - 1); }
};

struct Trajectory {
    model::ModelParams params;
    model::Basis basis;
    TimeGrid grid;
    std::vector<model::QuantumState> states;  // one per sample
    std::string engine;                       // "dense" | "krylov"
    double tol = 0.0;
    double untagged_t_max = 0.0;  // light-cone guard (open boundary)

    // Samples past the guard cannot be compared against infinite-lattice results.
    bool tagged(int i) const {
        return params.boundary == model::Boundary::open && grid.t(i) > untagged_t_max;
    }
};

// Full eigendecomposition; dimension <= 5000.
Trajectory evolve_dense(const model::QuantumState& s0, const model::ModelParams& p,
                        const TimeGrid& grid);

// Short-iterative Lanczos with adaptive step and subspace size;
// per-step local error <= tol, tol in [1e-12, 1e-6].
Trajectory evolve_krylov(const model::QuantumState& s0, const model::ModelParams& p,
                         const TimeGrid& grid, double tol);

double energy_expectation(const model::QuantumState& s, const model::ModelParams& p);

}  // namespace duodecay::prop
