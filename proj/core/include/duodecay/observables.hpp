// observables.hpp — projections of trajectories onto physical observables
//
// Parity doorway amplitudes: in sector 2, C_sigma = (<e1;x2| + sigma <e2;x1|)/sqrt2,
// the emitter-photon configuration |ee> decays through. In sector 1 the same
// slots hold the parity emitter amplitudes (<e1| + sigma <e2|)/sqrt2.

#pragma once

#include <cmath>
#include <vector>

#include "duodecay/propagate.hpp"

namespace duodecay::prop {

struct ObservableSample {
    double t = 0.0;
    double P_ee = 0.0;          // doubly-excited population (sector 2)
    double P_e1 = 0.0;          // emitter 1 excited (any photon content)
    double P_e2 = 0.0;
    double P_photon_only = 0.0; // no emitter excited
    cplx C_ee{0.0, 0.0};
    cplx C_plus{0.0, 0.0};
    cplx C_minus{0.0, 0.0};
    std::vector<double> n_photon;  // per-site photon density
    double total_prob = 0.0;
    bool tagged = false;
};

struct ObservableSet {
    model::ModelParams params;
    TimeGrid grid;
    std::string engine;
    double untagged_t_max = 0.0;
    std::vector<ObservableSample> samples;
};

inline ObservableSample extract_sample(const model::QuantumState& s,
                                       const model::ModelParams& p) {
    const model::Basis& b = s.basis;
    const int L = b.L;
    ObservableSample o;
    o.t = s.time;
    o.n_photon.assign(L, 0.0);
    const double r = 1.0 / std::sqrt(2.0);
    if (b.sector == 1) {
        const cplx b1 = s.amp[b.idx_emitter(0)], b2 = s.amp[b.idx_emitter(1)];
        o.P_e1 = std::norm(b1);
        o.P_e2 = std::norm(b2);
        o.C_plus = r * (b1 + b2);
        o.C_minus = r * (b1 - b2);
        for (int j = 0; j < L; ++j) {
            const double nj = std::norm(s.amp[b.idx_photon(j)]);
            o.n_photon[j] = nj;
            o.P_photon_only += nj;
        }
        o.total_prob = o.P_e1 + o.P_e2 + o.P_photon_only;
        return o;
    }
    o.C_ee = s.amp[b.idx_ee()];
    o.P_ee = std::norm(o.C_ee);
    o.C_plus = r * (s.amp[b.idx_e_ph(0, p.x2_resolved())] +
                    s.amp[b.idx_e_ph(1, p.x1_resolved())]);
    o.C_minus = r * (s.amp[b.idx_e_ph(0, p.x2_resolved())] -
                     s.amp[b.idx_e_ph(1, p.x1_resolved())]);
    for (int j = 0; j < L; ++j) {
        const double n1 = std::norm(s.amp[b.idx_e_ph(0, j)]);
        const double n2 = std::norm(s.amp[b.idx_e_ph(1, j)]);
        o.P_e1 += n1;
        o.P_e2 += n2;
        o.n_photon[j] += n1 + n2;
    }
    o.P_e1 += o.P_ee;  // |ee> counts toward both emitter populations
    o.P_e2 += o.P_ee;
    double p2 = 0.0;
    for (int j = 0; j < L; ++j) {
        for (int k = j; k < L; ++k) {
            const double w = std::norm(s.amp[b.idx_pair(j, k)]);
            p2 += w;
            if (j == k) {
                o.n_photon[j] += 2.0 * w;
            } else {
                o.n_photon[j] += w;
                o.n_photon[k] += w;
            }
        }
    }
    o.P_photon_only = p2;
    // total probability: P_ee + one-emitter-one-photon + two-photon
    o.total_prob = o.P_ee + (o.P_e1 - o.P_ee) + (o.P_e2 - o.P_ee) + p2;
    return o;
}

inline ObservableSet extract_observables(const Trajectory& tr) {
    require(!tr.states.empty(), "extract_observables: trajectory stores no states");
    ObservableSet set;
    set.params = tr.params;
    set.grid = tr.grid;
    set.engine = tr.engine;
    set.untagged_t_max = tr.untagged_t_max;
    set.samples.reserve(tr.states.size());
    for (int i = 0; i < static_cast<int>(tr.states.size()); ++i) {
        ObservableSample o = extract_sample(tr.states[i], tr.params);
        o.tagged = tr.tagged(i);
        set.samples.push_back(std::move(o));
    }
    return set;
}

}  // namespace duodecay::prop
