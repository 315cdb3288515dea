#include <cmath>
#include <random>

#include "doctest.h"
#include "duodecay/observables.hpp"
#include "duodecay/propagate.hpp"

using namespace duodecay;
using model::Basis;
using model::Boundary;
using model::ModelParams;
using model::QuantumState;
using prop::TimeGrid;

namespace {
QuantumState random_state(const Basis& b, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    QuantumState s = QuantumState::zero(b);
    for (auto& a : s.amp) a = {nd(rng), nd(rng)};
    const double n = s.norm();
    for (auto& a : s.amp) a /= n;
    return s;
}
}  // namespace

TEST_CASE("g = 0 keeps |ee> stationary up to the detuning phase") {
    ModelParams p;
    p.L = 11;
    p.g = 0.0;
    p.delta = 0.37;
    Basis b = Basis::build(p);
    auto tr = prop::evolve_dense(model::state_ee(b), p, {8.0, 33});
    for (const auto& st : tr.states) {
        CHECK(std::abs(std::abs(st.amp[b.idx_ee()]) - 1.0) < 1e-12);
        const cplx expect = std::exp(-iu * (2.0 * p.delta * st.time));
        CHECK(std::abs(st.amp[b.idx_ee()] - expect) < 1e-10);
    }
}

TEST_CASE("dense vs krylov agree to 1e-8 (engine cross-check)") {
    ModelParams p;
    p.L = 11;
    p.g = 0.2;
    p.delta = 0.0;
    Basis b = Basis::build(p);
    QuantumState s0 = model::state_ee(b);
    TimeGrid grid{20.0, 41};
    auto td = prop::evolve_dense(s0, p, grid);
    auto tk = prop::evolve_krylov(s0, p, grid, 1e-10);
    double worst = 0.0;
    for (int s = 0; s < grid.n_samples; ++s)
        for (std::size_t i = 0; i < b.dim(); ++i)
            worst = std::max(worst, std::abs(td.states[s].amp[i] - tk.states[s].amp[i]));
    CHECK(worst < 1e-8);
}

TEST_CASE("krylov unitarity and energy conservation") {
    ModelParams p;
    p.L = 41;
    p.g = 0.5;
    p.delta = 0.3;
    Basis b = Basis::build(p);
    QuantumState s0 = random_state(b, 5);
    auto tr = prop::evolve_krylov(s0, p, {15.0, 16}, 1e-10);
    const double e0 = prop::energy_expectation(tr.states.front(), p);
    for (const auto& st : tr.states) {
        CHECK(std::abs(st.norm() - 1.0) < 1e-9);
        CHECK(std::abs(prop::energy_expectation(st, p) - e0) < 1e-8 * std::abs(e0));
    }
}

TEST_CASE("free photon propagation matches the exact lattice series") {
    // <j|e^{-iHt}|j0> = i^{|j-j0|} (-1)^{?}: with H = -2J cos k the amplitude
    // is i^{|d|} J_{|d|}(2 J t); checked on a large open lattice before the
    // light cone reaches the edge.
    ModelParams p;
    p.L = 201;
    p.g = 0.0;
    p.n_excitations = 1;
    Basis b = Basis::build(p);
    QuantumState s0 = QuantumState::zero(b);
    const int j0 = 100;
    s0.amp[b.idx_photon(j0)] = 1.0;
    const double T = 30.0;
    auto tr = prop::evolve_krylov(s0, p, {T, 4}, 1e-11);
    const auto& fin = tr.states.back();
    for (int d = 0; d <= 60; d += 7) {
        const cplx expect = std::pow(iu, d) * std::cyl_bessel_j(d, 2.0 * p.J * T);
        CHECK(std::abs(fin.amp[b.idx_photon(j0 + d)] - expect) < 1e-6);
    }
}

TEST_CASE("wavepacket moves at the group velocity") {
    ModelParams p;
    p.L = 129;
    p.g = 0.0;
    p.n_excitations = 1;
    p.boundary = Boundary::periodic;
    Basis b = Basis::build(p);
    const double k0 = pi / 2;
    const int c0 = 30;
    QuantumState s0 = QuantumState::zero(b);
    for (int j = 0; j < p.L; ++j) {
        const double envelope = std::exp(-0.5 * sqr((j - c0) / 6.0));
        s0.amp[b.idx_photon(j)] = envelope * std::exp(iu * (k0 * j));
    }
    const double n0 = s0.norm();
    for (auto& a : s0.amp) a /= n0;
    const double T = 25.0;
    auto tr = prop::evolve_krylov(s0, p, {T, 2}, 1e-10);
    auto obs = prop::extract_sample(tr.states.back(), p);
    double mean = 0.0, wsum = 0.0;
    for (int j = 0; j < p.L; ++j) {
        mean += j * obs.n_photon[j];
        wsum += obs.n_photon[j];
    }
    mean /= wsum;
    const double vg = 2.0 * p.J * std::sin(k0);
    CHECK(std::abs(mean - (c0 + vg * T)) < 0.02 * vg * T);
}

TEST_CASE("extract_observables: projections and the probability identity") {
    ModelParams p;
    p.L = 9;
    Basis b = Basis::build(p);

    auto o_ee = prop::extract_sample(model::state_ee(b), p);
    CHECK(o_ee.P_ee == doctest::Approx(1.0));
    for (double nj : o_ee.n_photon) CHECK(nj == 0.0);

    // equal superposition of |e1; x2> and |e2; x1>
    QuantumState s = QuantumState::zero(b);
    s.amp[b.idx_e_ph(0, p.x2_resolved())] = 1.0 / std::sqrt(2.0);
    s.amp[b.idx_e_ph(1, p.x1_resolved())] = 1.0 / std::sqrt(2.0);
    auto o = prop::extract_sample(s, p);
    CHECK(o.P_e1 == doctest::Approx(0.5));
    CHECK(o.P_e2 == doctest::Approx(0.5));
    CHECK(std::abs(o.C_plus - cplx{1.0, 0.0}) < 1e-14);
    CHECK(std::abs(o.C_minus) < 1e-14);

    auto rnd = random_state(b, 9);
    auto orr = prop::extract_sample(rnd, p);
    CHECK(std::abs(orr.total_prob - 1.0) < 1e-12);
    double nsum = 0.0;
    for (double nj : orr.n_photon) nsum += nj;
    // photon-number identity: 1-photon weight + 2 * 2-photon weight
    CHECK(nsum == doctest::Approx((orr.P_e1 - orr.P_ee) + (orr.P_e2 - orr.P_ee) +
                                  2.0 * orr.P_photon_only)
                      .epsilon(1e-10));
}

TEST_CASE("mirror-odd projection stays zero from |ee> on a ring") {
    ModelParams p;
    p.L = 15;
    p.boundary = Boundary::periodic;
    p.g = 0.4;
    Basis b = Basis::build(p);
    auto perm = model::mirror_permutation(p, b);
    auto tr = prop::evolve_dense(model::state_ee(b), p, {12.0, 25});
    for (const auto& st : tr.states)
        CHECK(model::odd_projection_norm(st, perm) < 1e-10);
}

TEST_CASE("determinism: identical inputs give identical trajectories") {
    ModelParams p;
    p.L = 11;
    p.g = 0.35;
    Basis b = Basis::build(p);
    QuantumState s0 = model::state_ee(b);
    auto t1 = prop::evolve_krylov(s0, p, {7.0, 15}, 1e-10);
    auto t2 = prop::evolve_krylov(s0, p, {7.0, 15}, 1e-10);
    for (int s = 0; s < 15; ++s)
        for (std::size_t i = 0; i < b.dim(); ++i) {
            CHECK(t1.states[s].amp[i].real() == t2.states[s].amp[i].real());
            CHECK(t1.states[s].amp[i].imag() == t2.states[s].amp[i].imag());
        }
}
