#include <cmath>

#include "doctest.h"
#include "duodecay/band.hpp"
#include "duodecay/lattice_eigs.hpp"
#include "duodecay/observables.hpp"
#include "duodecay/propagate.hpp"

using namespace duodecay;
using model::ModelParams;
using onex::Channel;
using onex::Sheet;

namespace {
Channel chan(double g, double delta, int sigma) { return Channel{1.0, g, delta, 1, sigma}; }
}  // namespace

TEST_CASE("self-energy basics: sign, retarded side, asymptotics") {
    // d = 0 reference outside the band: real and positive
    const cplx s3 = onex::self_energy_site(cplx{3.0, 0.0}, 1.0, 0.4);
    CHECK(s3.imag() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(s3.real() > 0.0);

    // physical-sheet decay side: Im Sigma(E + i0) < 0 inside the band
    for (int sigma : {+1, -1}) {
        Channel c = chan(0.5, 0.2, sigma);
        for (double E : {-1.7, -0.6, 0.0, 0.9, 1.8})
            CHECK(c.self_energy(cplx{E, 0.0}).imag() < 0.0);
    }

    // Sigma -> g^2/z with O(1/z^2) corrections: the deviation at 5J is the
    // exact kernel's 2(J/z)^2 (about 9 percent) and shrinks like 1/z^2.
    const double dev5 =
        std::abs(onex::self_energy_site(cplx{5.0, 0.0}, 1.0, 0.7) * 5.0 / (0.7 * 0.7) - 1.0);
    const double dev50 =
        std::abs(onex::self_energy_site(cplx{50.0, 0.0}, 1.0, 0.7) * 50.0 / (0.7 * 0.7) - 1.0);
    CHECK(dev5 < 0.10);
    CHECK(dev50 < 2e-3);
    CHECK(dev5 / dev50 > 80.0);  // 1/z^2 scaling

    CHECK_THROWS(chan(0.3, 0.0, +1).self_energy(cplx{2.0, 0.0}));  // branch point
}

TEST_CASE("conjugate-point reality symmetry on the physical sheet") {
    Channel c = chan(0.8, -0.3, -1);
    for (cplx z : {cplx{0.4, 0.9}, cplx{-2.7, 0.2}, cplx{1.1, -0.5}}) {
        CHECK(std::abs(c.self_energy(std::conj(z)) - std::conj(c.self_energy(z))) < 1e-14);
        CHECK(std::abs(c.green(std::conj(z)) - std::conj(c.green(z))) < 1e-14);
    }
}

TEST_CASE("self-energy derivative matches finite differences") {
    Channel c = chan(0.6, 0.1, +1);
    for (cplx z : {cplx{2.9, 0.0}, cplx{-2.4, 0.0}, cplx{0.3, 0.7}}) {
        const double h = 1e-6;
        const cplx fd = (c.self_energy(z + h) - c.self_energy(z - h)) / (2.0 * h);
        CHECK(std::abs(fd - c.self_energy_derivative(z)) < 1e-6);
    }
    // second sheet too
    const cplx z2{0.4, -0.3};
    const double h = 1e-6;
    const cplx fd2 =
        (c.self_energy(z2 + h, Sheet::second) - c.self_energy(z2 - h, Sheet::second)) /
        (2.0 * h);
    CHECK(std::abs(fd2 - c.self_energy_derivative(z2, Sheet::second)) < 1e-6);
}

TEST_CASE("bound states: none at g = 0; counts follow the edge thresholds") {
    ModelParams p;
    p.g = 0.0;
    CHECK(onex::find_bound_states_1exc(p).empty());

    // weak coupling, delta = 0: lower + state and upper - state only
    auto weak = onex::find_bound_states_1exc([] {
        ModelParams q;
        q.g = 0.4;
        return q;
    }());
    CHECK(weak.size() == 2);
    CHECK(weak.front().energy < -2.0);
    CHECK(weak.front().sigma == +1);
    CHECK(weak.back().energy > 2.0);
    CHECK(weak.back().sigma == -1);

    // strong coupling: all four present (g^2 > 2J(2J +/- delta))
    auto strong = onex::find_bound_states_1exc([] {
        ModelParams q;
        q.g = 2.2;
        return q;
    }());
    CHECK(strong.size() == 4);
    for (const auto& b : strong) CHECK(b.residual < 1e-10);
}

TEST_CASE("bound-state energies and weights match lattice diagonalization at L = 2001") {
    ModelParams p;
    p.L = 2001;
    p.n_excitations = 1;
    p.g = 1.0;
    p.delta = 0.0;
    auto H = lat::sparse_hamiltonian(p);
    auto analytic = onex::find_bound_states_1exc(p);
    // delta = 0 parity-energy reflection: spectrum symmetric about 0
    REQUIRE(analytic.size() == 2);
    CHECK(analytic[0].energy == doctest::Approx(-analytic[1].energy).epsilon(1e-10));

    const double pad = 1e-6;
    auto low = lat::eigs_in_interval(H, p, analytic[0].energy - 0.5, -2.0 - pad);
    auto high = lat::eigs_in_interval(H, p, 2.0 + pad, analytic[1].energy + 0.5);
    std::vector<lat::GapEig> lattice;
    for (auto& e : low)
        if (e.emitter_weight > 1e-8) lattice.push_back(e);
    for (auto& e : high)
        if (e.emitter_weight > 1e-8) lattice.push_back(e);
    REQUIRE(lattice.size() == analytic.size());
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        CHECK(std::abs(lattice[i].energy - analytic[i].energy) < 1e-6);
        CHECK(std::abs(lattice[i].emitter_weight - analytic[i].weight) < 1e-6);
    }
}

TEST_CASE("weak-coupling weights equal lattice emitter overlap (g = 0.1J)") {
    ModelParams p;
    p.L = 2001;
    p.n_excitations = 1;
    p.g = 0.1;
    p.delta = 0.0;
    auto analytic = onex::find_bound_states_1exc(p);
    REQUIRE(analytic.size() == 2);
    for (const auto& b : analytic) CHECK(b.weight < 0.1);  // w << 1
    auto H = lat::sparse_hamiltonian(p);
    for (const auto& b : analytic) {
        // clip the search window so it stays outside the continuum band
        const double lo = b.energy > 0 ? 2.0 + 1e-7 : b.energy - 1e-3;
        const double hi = b.energy > 0 ? b.energy + 1e-3 : -2.0 - 1e-7;
        auto eigs = lat::eigs_in_interval(H, p, lo, hi);
        REQUIRE(eigs.size() == 1);
        CHECK(std::abs(eigs[0].energy - b.energy) < 1e-6);
        CHECK(std::abs(eigs[0].emitter_weight - b.weight) < 1e-6);
    }
}

TEST_CASE("channel amplitude: initial value, sum rule, oracle match (g = 0.3J)") {
    for (int sigma : {+1, -1}) {
        auto amp = onex::ChannelAmplitude::build(chan(0.3, 0.0, sigma));
        CHECK(std::abs(amp(0.0) - cplx{1.0, 0.0}) < 1e-8);  // t = 0
        CHECK(std::abs(amp.completeness() - 1.0) < 1e-8);   // pole + cut sum rule
    }

    ModelParams p;
    p.L = 401;
    p.n_excitations = 1;
    p.g = 0.3;
    p.delta = 0.0;
    model::Basis b = model::Basis::build(p);
    auto amp = onex::ChannelAmplitude::build(chan(0.3, 0.0, +1));
    auto tr = prop::evolve_krylov(model::state_emitter_parity(b, +1), p, {40.0, 81}, 1e-11);
    double worst = 0.0;
    for (int s = 0; s < 81; ++s) {
        REQUIRE(!tr.tagged(s));
        const auto obs = prop::extract_sample(tr.states[s], p);
        worst = std::max(worst, std::abs(obs.C_plus - amp(tr.grid.t(s))));
    }
    CHECK(worst < 1e-5);
}

TEST_CASE("parity-energy reflection: A_+(t) = conj(A_-(t)) at delta = 0") {
    auto ap = onex::ChannelAmplitude::build(chan(0.7, 0.0, +1));
    auto am = onex::ChannelAmplitude::build(chan(0.7, 0.0, -1));
    for (double t : {0.5, 3.0, 11.0, 27.0})
        CHECK(std::abs(ap(t) - std::conj(am(t))) < 1e-10);
    // and across delta -> -delta with the parity flip
    auto apd = onex::ChannelAmplitude::build(chan(0.7, 0.4, +1));
    auto amd = onex::ChannelAmplitude::build(chan(0.7, -0.4, -1));
    for (double t : {1.0, 8.0, 19.0})
        CHECK(std::abs(apd(t) - std::conj(amd(t))) < 1e-10);
}

TEST_CASE("amplitude derivatives match finite differences of eval") {
    auto amp = onex::ChannelAmplitude::build(chan(0.5, 0.2, -1));
    const double h = 1e-5;
    for (double t : {1.0, 6.0, 14.0}) {
        const cplx fd1 = (amp(t + h) - amp(t - h)) / (2.0 * h);
        const cplx fd2 = (amp(t + h) - 2.0 * amp(t) + amp(t - h)) / (h * h);
        CHECK(std::abs(fd1 - amp.eval(t, 1)) < 1e-7);
        CHECK(std::abs(fd2 - amp.eval(t, 2)) < 1e-4);
    }
}
