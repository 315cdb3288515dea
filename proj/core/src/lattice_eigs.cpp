#include "duodecay/lattice_eigs.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>

#include "duodecay/hamiltonian.hpp"

namespace duodecay::lat {

using SpMat = Eigen::SparseMatrix<double>;

namespace {
SpMat shifted(const SpMat& H, double s) {
    SpMat I(H.rows(), H.cols());
    I.setIdentity();
    return H - s * I;
}
}  // namespace

Eigen::SparseMatrix<double> sparse_hamiltonian(const model::ModelParams& p) {
    const model::Basis b = model::Basis::build(p);
    const std::size_t n = b.dim();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(8 * n);
    std::vector<cplx> e(n, cplx{0.0, 0.0}), col(n);
    for (std::size_t c = 0; c < n; ++c) {
        e[c] = 1.0;
        model::apply_hamiltonian(p, b, e.data(), col.data());
        e[c] = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            if (col[r].real() != 0.0)
                trip.emplace_back(static_cast<int>(r), static_cast<int>(c), col[r].real());
    }
    SpMat H(n, n);
    H.setFromTriplets(trip.begin(), trip.end());
    H.makeCompressed();
    return H;
}

int eig_count_below(const SpMat& H, double shift) {
    for (int jitter = 0; jitter < 4; ++jitter) {
        const double s = shift + jitter * 3e-13 * (1.0 + std::abs(shift));
        Eigen::SimplicialLDLT<SpMat> ldlt(shifted(H, s));
        if (ldlt.info() != Eigen::Success) continue;
        const auto& D = ldlt.vectorD();
        bool suspicious = false;
        int neg = 0;
        double dmax = 0.0;
        for (int k = 0; k < D.size(); ++k) dmax = std::max(dmax, std::abs(D(k)));
        for (int k = 0; k < D.size(); ++k) {
            if (D(k) < 0.0) ++neg;
            if (std::abs(D(k)) < 1e-13 * dmax) suspicious = true;  // near-breakdown pivot
        }
        if (!suspicious) return neg;
    }
    throw std::runtime_error("eig_count_below: LDLT inertia did not stabilize");
}

double emitter_weight(const Eigen::VectorXd& v, const model::Basis& b) {
    double w = 0.0;
    if (b.sector == 1) {
        w = v(b.idx_emitter(0)) * v(b.idx_emitter(0)) +
            v(b.idx_emitter(1)) * v(b.idx_emitter(1));
        return w;
    }
    w = v(b.idx_ee()) * v(b.idx_ee());
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < b.L; ++j) {
            const double a = v(b.idx_e_ph(i, j));
            w += a * a;
        }
    return w;
}

namespace {

// Block inverse iteration around `shift`; returns `m` Ritz pairs.
std::vector<GapEig> refine_block(const SpMat& H, const model::Basis& basis, double shift,
                                 int m) {
    const int n = static_cast<int>(H.rows());
    Eigen::SparseLU<SpMat> lu(shifted(H, shift));
    if (lu.info() != Eigen::Success) {
        lu.compute(shifted(H, shift + 1e-11 * (1.0 + std::abs(shift))));
        if (lu.info() != Eigen::Success)
            throw std::runtime_error("refine_block: singular shifted factorization");
    }
    Eigen::MatrixXd X(n, m);
    for (int c = 0; c < m; ++c)
        for (int k = 0; k < n; ++k)
            X(k, c) = std::sin(0.7 * (k + 1) * (c + 1)) + 0.3 * std::cos(1.3 * k + c);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr0(X);
    X = qr0.householderQ() * Eigen::MatrixXd::Identity(n, m);
    double prev = 1e300;
    for (int it = 0; it < 80; ++it) {
        for (int c = 0; c < m; ++c) X.col(c) = lu.solve(X.col(c)).eval();
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
        X = qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
        const Eigen::MatrixXd HX = H * X;
        const Eigen::MatrixXd T = X.transpose() * HX;
        const double resid = (HX - X * T).norm();
        if (resid < 1e-11 * (1.0 + std::abs(shift)) || resid >= prev * 0.999999) {
            if (resid < 1e-8 * (1.0 + std::abs(shift)) || it > 60) break;
        }
        prev = resid;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X.transpose() * (H * X));
    std::vector<GapEig> out;
    for (int c = 0; c < m; ++c) {
        GapEig e;
        e.energy = es.eigenvalues()(c);
        Eigen::VectorXd v = X * es.eigenvectors().col(c);
        v.normalize();
        e.vec = v;
        e.residual = (H * v - e.energy * v).norm();
        e.emitter_weight = emitter_weight(v, basis);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

std::vector<GapEig> eigs_in_interval(const SpMat& H, const model::ModelParams& p, double a,
                                     double b) {
    const model::Basis basis = model::Basis::build(p);
    std::vector<GapEig> found;
    struct Iv {
        double a, b;
        int ca, cb;
    };
    const int ca0 = eig_count_below(H, a), cb0 = eig_count_below(H, b);
    if (cb0 == ca0) return found;
    std::vector<Iv> stack{{a, b, ca0, cb0}};
    while (!stack.empty()) {
        Iv iv = stack.back();
        stack.pop_back();
        const int count = iv.cb - iv.ca;
        if (count == 0) continue;
        const double width = iv.b - iv.a;
        const bool narrow = width < 1e-2 * (1.0 + std::abs(iv.a));
        const bool tiny = width < 1e-8 * (1.0 + std::abs(iv.a));
        if ((count == 1 && narrow) || tiny) {
            auto ritz = refine_block(H, basis, 0.5 * (iv.a + iv.b), count);
            for (auto& e : ritz) {
                // keep only pairs that really live in this certified interval
                if (e.energy > iv.a - 1e-9 && e.energy < iv.b + 1e-9)
                    found.push_back(std::move(e));
            }
            continue;
        }
        const double m = 0.5 * (iv.a + iv.b);
        const int cm = eig_count_below(H, m);
        stack.push_back({iv.a, m, iv.ca, cm});
        stack.push_back({m, iv.b, cm, iv.cb});
    }
    std::sort(found.begin(), found.end(),
              [](const GapEig& x, const GapEig& y) { return x.energy < y.energy; });
    return found;
}

}  // namespace duodecay::lat
