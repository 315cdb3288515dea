#include "duodecay/propagate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "duodecay/parallel.hpp"

namespace duodecay::prop {

using model::Basis;
using model::ModelParams;
using model::QuantumState;

namespace {

void check_finite(const std::vector<cplx>& v) {
    for (const auto& a : v)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw std::invalid_argument("propagate: non-finite amplitudes in input state");
}

Trajectory make_frame(const QuantumState& s0, const ModelParams& p, const TimeGrid& grid,
                      const char* engine, double tol) {
    p.validate();
    grid.validate();
    check_finite(s0.amp);
    require(s0.basis == Basis::build(p), "propagate: basis mismatch");
    Trajectory tr;
    tr.params = p;
    tr.basis = s0.basis;
    tr.grid = grid;
    tr.engine = engine;
    tr.tol = tol;
    tr.untagged_t_max = model::light_cone_time(p);
    tr.states.reserve(grid.n_samples);
    return tr;
}

}  // namespace

Trajectory evolve_dense(const QuantumState& s0, const ModelParams& p, const TimeGrid& grid) {
    Trajectory tr = make_frame(s0, p, grid, "dense", 0.0);
    const std::size_t n = tr.basis.dim();
    require(n <= 5000, "evolve_dense: dimension too large (limit 5000)");

    const Eigen::MatrixXd H = model::dense_hamiltonian(p);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("evolve_dense: eigendecomposition failed");
    const Eigen::MatrixXd& U = es.eigenvectors();
    const Eigen::VectorXd& lam = es.eigenvalues();

    Eigen::VectorXcd psi0(n);
    for (std::size_t i = 0; i < n; ++i) psi0(i) = s0.amp[i];
    const Eigen::VectorXcd c0 = U.transpose() * psi0;

    for (int s = 0; s < grid.n_samples; ++s) {
        const double t = grid.t(s);
        Eigen::VectorXcd c(n);
        for (std::size_t i = 0; i < n; ++i)
            c(i) = c0(i) * std::exp(cplx{0.0, -lam(i) * t});
        const Eigen::VectorXcd psi = U * c;
        QuantumState st = QuantumState::zero(tr.basis);
        st.time = t;
        for (std::size_t i = 0; i < n; ++i) st.amp[i] = psi(i);
        tr.states.push_back(std::move(st));
    }
    return tr;
}

namespace {

// One adaptive Lanczos advance by exactly dt (possibly several inner steps).
struct LanczosWorkspace {
    std::vector<std::vector<cplx>> V;
    std::vector<double> alpha, beta;
};

void lanczos_step_to(std::vector<cplx>& psi, const ModelParams& p, const Basis& b, double dt,
                     double tol_per_time, int m_max, LanczosWorkspace& ws) {
    const std::size_t n = psi.size();
    double remaining = dt;
    double h = dt;  // trial step, refined adaptively
    int guard = 0;
    while (remaining > 1e-15 * dt) {
        if (++guard > 100000) throw std::runtime_error("evolve_krylov: step control stalled");
        h = std::min(h, remaining);
        const double nrm = std::sqrt(num::deterministic_norm2(psi));
        if (!(nrm > 0.0)) throw std::runtime_error("evolve_krylov: state collapsed to zero");

        // Build the Krylov basis with full reorthogonalization.
        int m = 0;
        bool happy = false;
        ws.alpha.clear();
        ws.beta.clear();
        if (ws.V.empty()) ws.V.emplace_back(n);
        for (std::size_t i = 0; i < n; ++i) ws.V[0][i] = psi[i] / nrm;
        while (m < m_max) {
            if (ws.V.size() <= static_cast<std::size_t>(m + 1)) ws.V.emplace_back(n);
            std::vector<cplx>& w = ws.V[m + 1];
            model::apply_hamiltonian(p, b, ws.V[m].data(), w.data());
            const cplx a = num::deterministic_dot(ws.V[m], w);
            ws.alpha.push_back(a.real());
            num::parallel_for((n + 65535) / 65536, [&](std::size_t blk) {
                const std::size_t lo = blk * 65536, hi = std::min(n, lo + 65536);
                for (std::size_t i = lo; i < hi; ++i) {
                    cplx x = w[i] - a * ws.V[m][i];
                    if (m > 0) x -= ws.beta[m - 1] * ws.V[m - 1][i];
                    w[i] = x;
                }
            });
            // full reorthogonalization pass
            for (int k = 0; k <= m; ++k) {
                const cplx q = num::deterministic_dot(ws.V[k], w);
                if (std::abs(q) > 0.0)
                    num::parallel_for((n + 65535) / 65536, [&](std::size_t blk) {
                        const std::size_t lo = blk * 65536, hi = std::min(n, lo + 65536);
                        for (std::size_t i = lo; i < hi; ++i) w[i] -= q * ws.V[k][i];
                    });
            }
            const double bnorm = std::sqrt(num::deterministic_norm2(w));
            ws.beta.push_back(bnorm);
            ++m;
            if (bnorm < 1e-14) {  // invariant subspace: propagation is exact
                happy = true;
                break;
            }
            for (std::size_t i = 0; i < n; ++i) w[i] /= bnorm;
        }

        // exp(-i T h) e1 in the tridiagonal subspace
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            T(i, i) = ws.alpha[i];
            if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = ws.beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        auto subspace_coeffs = [&](double tau) {
            Eigen::VectorXcd u(m);
            const Eigen::MatrixXd& W = es.eigenvectors();
            for (int i = 0; i < m; ++i) {
                cplx acc{0.0, 0.0};
                for (int q = 0; q < m; ++q)
                    acc += W(i, q) * W(0, q) * std::exp(cplx{0.0, -es.eigenvalues()(q) * tau});
                u(i) = acc;
            }
            return u;
        };

        Eigen::VectorXcd u = subspace_coeffs(h);
        const double err = happy ? 0.0 : ws.beta[m - 1] * std::abs(u(m - 1));
        const double budget = tol_per_time * h;
        if (!happy && err > budget && h > 1e-12) {
            const double shrink =
                std::max(0.1, 0.8 * std::pow(budget / (err + 1e-300), 1.0 / m));
            h *= shrink;
            continue;  // redo with a smaller step
        }

        num::parallel_for((n + 65535) / 65536, [&](std::size_t blk) {
            const std::size_t lo = blk * 65536, hi = std::min(n, lo + 65536);
            for (std::size_t i = lo; i < hi; ++i) {
                cplx acc{0.0, 0.0};
                for (int k = 0; k < m; ++k) acc += u(k) * ws.V[k][i];
                psi[i] = nrm * acc;
            }
        });
        remaining -= h;
        if (!happy && err < 0.1 * budget && h < remaining)
            h *= std::min(2.0, std::pow(0.5 * budget / (err + 1e-300), 1.0 / m));
    }
}

}  // namespace

Trajectory evolve_krylov(const QuantumState& s0, const ModelParams& p, const TimeGrid& grid,
                         double tol) {
    require(tol >= 1e-12 && tol <= 1e-6, "evolve_krylov: tol must be in [1e-12, 1e-6]");
    Trajectory tr = make_frame(s0, p, grid, "krylov", tol);
    const std::size_t n = tr.basis.dim();

    // Memory-aware subspace cap (vectors are 16 n bytes each).
    const double budget_bytes = 2.5e9;
    int m_max = static_cast<int>(budget_bytes / (16.0 * static_cast<double>(n)));
    m_max = std::clamp(m_max, 4, 30);
    m_max = std::min<std::size_t>(m_max, n);

    const double tol_per_time = tol / grid.t_max;  // local error per unit time

    std::vector<cplx> psi = s0.amp;
    LanczosWorkspace ws;
    for (int s = 0; s < grid.n_samples; ++s) {
        const double t = grid.t(s);
        if (s > 0) {
            const double dt = grid.t(s) - grid.t(s - 1);
            lanczos_step_to(psi, p, tr.basis, dt, tol_per_time, m_max, ws);
        }
        QuantumState st;
        st.basis = tr.basis;
        st.amp = psi;
        st.time = t;
        tr.states.push_back(std::move(st));
    }
    return tr;
}

double energy_expectation(const QuantumState& s, const ModelParams& p) {
    QuantumState hs = model::apply_hamiltonian(s, p);
    return num::deterministic_dot(s.amp, hs.amp).real();
}

}  // namespace duodecay::prop
