#include "duodecay/hamiltonian.hpp"

#include <cmath>

#include "duodecay/parallel.hpp"

namespace duodecay::model {

namespace {
constexpr double kSqrt2 = 1.41421356237309504880;

// -1 means "no neighbor" (open edge)
inline int site_shift(int j, int dj, int L, Boundary bc) {
    int r = j + dj;
    if (bc == Boundary::periodic) {
        r %= L;
        if (r < 0) r += L;
        return r;
    }
    return (r < 0 || r >= L) ? -1 : r;
}
}  // namespace

void apply_hamiltonian(const ModelParams& p, const Basis& b, const cplx* in, cplx* out) {
    const int L = p.L;
    const int a1 = p.x1_resolved(), a2 = p.x2_resolved();
    const double J = p.J, g = p.g, D = p.delta;
    const Boundary bc = p.boundary;

    if (b.sector == 1) {
        out[b.idx_emitter(0)] = D * in[b.idx_emitter(0)] + g * in[b.idx_photon(a1)];
        out[b.idx_emitter(1)] = D * in[b.idx_emitter(1)] + g * in[b.idx_photon(a2)];
        for (int j = 0; j < L; ++j) {
            cplx acc{0.0, 0.0};
            const int jl = site_shift(j, -1, L, bc), jr = site_shift(j, +1, L, bc);
            if (jl >= 0) acc -= J * in[b.idx_photon(jl)];
            if (jr >= 0) acc -= J * in[b.idx_photon(jr)];
            if (j == a1) acc += g * in[b.idx_emitter(0)];
            if (j == a2) acc += g * in[b.idx_emitter(1)];
            out[b.idx_photon(j)] = acc;
        }
        return;
    }

    // ---- sector 2 ----
    // Symmetric-pair amplitude lookup: phi(m,n) with the sqrt(2) convention
    // for doubly occupied sites.
    auto phi_in = [&](int m, int n) -> cplx {
        if (m == n) return kSqrt2 * in[b.idx_pair(m, m)];
        return m < n ? in[b.idx_pair(m, n)] : in[b.idx_pair(n, m)];
    };

    out[b.idx_ee()] = 2.0 * D * in[b.idx_ee()] +
                      g * (in[b.idx_e_ph(0, a2)] + in[b.idx_e_ph(1, a1)]);

    for (int i = 0; i < 2; ++i) {
        const int ax_own = (i == 0) ? a1 : a2;    // emitter i's own cell (absorbs photons)
        const int ax_other = (i == 0) ? a2 : a1;  // where |ee> emits for this branch
        for (int j = 0; j < L; ++j) {
            cplx acc = D * in[b.idx_e_ph(i, j)];
            const int jl = site_shift(j, -1, L, bc), jr = site_shift(j, +1, L, bc);
            if (jl >= 0) acc -= J * in[b.idx_e_ph(i, jl)];
            if (jr >= 0) acc -= J * in[b.idx_e_ph(i, jr)];
            if (j == ax_other) acc += g * in[b.idx_ee()];
            acc += g * phi_in(ax_own, j);
            out[b.idx_e_ph(i, j)] = acc;
        }
    }

    num::parallel_for(static_cast<std::size_t>(L), [&](std::size_t ju) {
        const int j = static_cast<int>(ju);
        const int jl = site_shift(j, -1, L, bc), jr = site_shift(j, +1, L, bc);
        for (int k = j; k < L; ++k) {
            const int kl = site_shift(k, -1, L, bc), kr = site_shift(k, +1, L, bc);
            cplx acc{0.0, 0.0};
            if (j == k) {
                // (H c)(j,j) = -sqrt2 J [c(j-1,j) + c(j,j+1)] + sqrt2 g (sources)
                if (jl >= 0) acc -= kSqrt2 * J * phi_in(jl, j);
                if (jr >= 0) acc -= kSqrt2 * J * phi_in(j, jr);
                if (j == a1) acc += kSqrt2 * g * in[b.idx_e_ph(0, j)];
                if (j == a2) acc += kSqrt2 * g * in[b.idx_e_ph(1, j)];
            } else {
                if (jl >= 0) acc -= J * phi_in(jl, k);
                if (jr >= 0) acc -= J * phi_in(jr, k);
                if (kl >= 0) acc -= J * phi_in(j, kl);
                if (kr >= 0) acc -= J * phi_in(j, kr);
                if (j == a1) acc += g * in[b.idx_e_ph(0, k)];
                if (k == a1) acc += g * in[b.idx_e_ph(0, j)];
                if (j == a2) acc += g * in[b.idx_e_ph(1, k)];
                if (k == a2) acc += g * in[b.idx_e_ph(1, j)];
            }
            out[b.idx_pair(j, k)] = acc;
        }
    });
}

Eigen::MatrixXd dense_hamiltonian(const ModelParams& p) {
    const Basis b = Basis::build(p);
    const std::size_t n = b.dim();
    require(n <= 20000, "dense_hamiltonian: dimension too large");
    Eigen::MatrixXd H(n, n);
    std::vector<cplx> e(n, cplx{0.0, 0.0}), col(n);
    for (std::size_t c = 0; c < n; ++c) {
        e[c] = 1.0;
        apply_hamiltonian(p, b, e.data(), col.data());
        e[c] = 0.0;
        for (std::size_t r = 0; r < n; ++r) H(r, c) = col[r].real();
    }
    return H;
}

std::vector<std::size_t> mirror_permutation(const ModelParams& p, const Basis& b) {
    require(p.boundary == Boundary::periodic,
            "mirror_permutation: bond-centered mirror is exact only on a ring");
    const int L = p.L;
    const int c = p.x1_resolved() + p.x2_resolved();  // j -> (c - j) mod L
    auto m = [&](int j) { return ((c - j) % L + L) % L; };
    std::vector<std::size_t> perm(b.dim());
    if (b.sector == 1) {
        perm[b.idx_emitter(0)] = b.idx_emitter(1);
        perm[b.idx_emitter(1)] = b.idx_emitter(0);
        for (int j = 0; j < L; ++j) perm[b.idx_photon(j)] = b.idx_photon(m(j));
        return perm;
    }
    perm[b.idx_ee()] = b.idx_ee();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < L; ++j) perm[b.idx_e_ph(i, j)] = b.idx_e_ph(1 - i, m(j));
    for (int j = 0; j < L; ++j)
        for (int k = j; k < L; ++k) {
            const int mj = m(j), mk = m(k);
            perm[b.idx_pair(j, k)] = b.idx_pair(std::min(mj, mk), std::max(mj, mk));
        }
    return perm;
}

std::vector<std::size_t> emitter_swap_permutation(const ModelParams& p, const Basis& b) {
    (void)p;
    std::vector<std::size_t> perm(b.dim());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    if (b.sector == 1) {
        perm[b.idx_emitter(0)] = b.idx_emitter(1);
        perm[b.idx_emitter(1)] = b.idx_emitter(0);
        return perm;
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < b.L; ++j) perm[b.idx_e_ph(i, j)] = b.idx_e_ph(1 - i, j);
    return perm;
}

}  // namespace duodecay::model
