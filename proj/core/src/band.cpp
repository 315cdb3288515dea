#include "duodecay/band.hpp"

#include <algorithm>
#include <cmath>

#include "duodecay/quadrature.hpp"
#include "duodecay/rootfind.hpp"

namespace duodecay::onex {

namespace {

// Mesh with geometric clustering toward the band edge at `edge`, extending to
// `far`. Weakly bound poles sit exponentially close to the edge.
std::vector<double> edge_clustered_mesh(double edge, double far) {
    std::vector<double> nodes;
    const double dir = far > edge ? 1.0 : -1.0;
    const double span = std::abs(far - edge);
    double off = 1e-12 * std::max(1.0, span);
    nodes.push_back(edge + dir * off);
    while (off < span) {
        off *= 1.35;
        nodes.push_back(edge + dir * std::min(off, span));
    }
    if (dir < 0) std::reverse(nodes.begin(), nodes.end());
    return nodes;
}

double real_pole_function(const Channel& c, double z) {
    return c.pole_function(cplx{z, 0.0}).real();
}

void refine_and_store(const Channel& c, double z0, std::vector<BoundState1>& out) {
    // Newton polish with the analytic derivative
    double z = z0;
    for (int it = 0; it < 60; ++it) {
        const cplx f = c.pole_function(cplx{z, 0.0});
        const cplx df = 1.0 - c.self_energy_derivative(cplx{z, 0.0});
        const double step = (f / df).real();
        z -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    const double resid = std::abs(real_pole_function(c, z));
    if (!(std::abs(z) > 2.0 * c.J)) return;  // polished into the band: reject
    BoundState1 b;
    b.energy = z;
    b.sigma = c.sigma;
    b.residual = resid;
    const cplx dD = 1.0 - c.self_energy_derivative(cplx{z, 0.0});
    b.weight = 1.0 / dD.real();
    const double ay = std::abs(c.y(cplx{z, 0.0}));
    b.localization = ay < 1.0 && ay > 0.0 ? -1.0 / std::log(ay) : 0.0;
    // deduplicate
    for (const auto& prev : out)
        if (std::abs(prev.energy - z) < 1e-9 * c.J) return;
    out.push_back(b);
}

}  // namespace

std::vector<BoundState1> find_bound_states_channel(const Channel& c) {
    std::vector<BoundState1> out;
    if (c.g == 0.0) return out;  // no hybridization
    const double reach = 2.0 * c.J + 10.0 * std::max(c.g * c.g / c.J, c.J);
    for (int side = 0; side < 2; ++side) {
        const double edge = side == 0 ? 2.0 * c.J : -2.0 * c.J;
        const double far = side == 0 ? reach : -reach;
        const auto mesh = edge_clustered_mesh(edge, far);
        double x0 = mesh.front();
        double f0 = real_pole_function(c, x0);
        for (std::size_t i = 1; i < mesh.size(); ++i) {
            const double x1 = mesh[i];
            const double f1 = real_pole_function(c, x1);
            if (std::isfinite(f0) && std::isfinite(f1) &&
                std::signbit(f0) != std::signbit(f1)) {
                auto r = num::brent([&](double z) { return real_pole_function(c, z); }, x0, x1);
                if (r.converged) refine_and_store(c, r.x, out);
            }
            x0 = x1;
            f0 = f1;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const BoundState1& a, const BoundState1& b) { return a.energy < b.energy; });
    return out;
}

std::vector<BoundState1> find_bound_states_1exc(const model::ModelParams& p) {
    std::vector<BoundState1> all;
    for (int sigma : {+1, -1}) {
        Channel c{p.J, p.g, p.delta, p.spacing, sigma};
        auto part = find_bound_states_channel(c);
        all.insert(all.end(), part.begin(), part.end());
    }
    std::sort(all.begin(), all.end(),
              [](const BoundState1& a, const BoundState1& b) { return a.energy < b.energy; });
    return all;
}

std::optional<std::pair<cplx, cplx>> resonance_pole(const Channel& c, double max_width) {
    if (c.g == 0.0) return std::nullopt;
    // Re Sigma(E + i0) = sigma g^2/(2J) inside the band (d = 1), so the
    // resonance center sits near delta + sigma g^2/(2J).
    double ec = c.delta + c.sigma * c.g * c.g / (2.0 * c.J);
    const double lim = 2.0 * c.J * 0.999;
    ec = std::clamp(ec, -lim, lim);
    const double k0 = std::acos(std::clamp(-ec / (2.0 * c.J), -1.0, 1.0));
    const double v = 2.0 * c.J * std::sin(k0);
    const double half_width =
        c.g * c.g * (1.0 + c.sigma * std::cos(k0)) / std::max(v, 1e-12);
    cplx z{ec, -std::min(half_width, max_width)};
    bool ok = false;
    for (int it = 0; it < 80; ++it) {
        const cplx f = z - c.delta - c.self_energy(z, Sheet::second);
        const cplx df = 1.0 - c.self_energy_derivative(z, Sheet::second);
        const cplx step = f / df;
        z -= step;
        if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(z))) {
            ok = true;
            break;
        }
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
    }
    if (!ok) return std::nullopt;
    if (z.imag() >= 0.0 || -z.imag() > max_width) return std::nullopt;
    if (std::abs(z.real()) > 2.0 * c.J) return std::nullopt;
    // residue of the continued spectral density [G_I - G_II]/(2 pi i)
    const cplx dD = 1.0 - c.self_energy_derivative(z, Sheet::second);
    const cplx r = -1.0 / (2.0 * pi * iu * dD);
    return std::make_pair(z, r);
}

ChannelAmplitude ChannelAmplitude::build(const Channel& c) {
    ChannelAmplitude amp;
    amp.chan_ = c;
    amp.bound_ = find_bound_states_channel(c);

    std::vector<std::pair<cplx, cplx>> poles;
    if (auto res = resonance_pole(c)) {
        const auto& [a, r] = *res;
        poles.push_back({a, r});
        poles.push_back({std::conj(a), std::conj(r)});
    }
    auto strip = [poles](double E) {
        cplx s{0.0, 0.0};
        for (const auto& [a, r] : poles) s += r / (cplx{E, 0.0} - a);
        return s;
    };
    auto rho = [c, strip](double E) -> cplx {
        return cplx{c.density(E), 0.0} - strip(E);
    };

    std::vector<double> breaks = {-2.0 * c.J, 2.0 * c.J};
    if (!poles.empty()) breaks.push_back(poles.front().first.real());
    const double ec = std::clamp(c.delta + c.sigma * c.g * c.g / (2.0 * c.J),
                                 -1.999 * c.J, 1.999 * c.J);
    breaks.push_back(ec);

    num::CutRepOptions opts;
    opts.order = 20;
    opts.rel_tol = 1e-12;
    amp.cut_ = num::CutRep::build(rho, breaks, poles, opts);

    auto weighted = [&](int order) {
        std::vector<std::pair<cplx, cplx>> wpoles;
        for (const auto& [a, r] : poles)
            wpoles.push_back({a, std::pow(-iu * a, order) * r});
        auto dens = [c, poles, order](double E) -> cplx {
            cplx val = std::pow(cplx{0.0, -E}, order) * c.density(E);
            for (const auto& [a, r] : poles)
                val -= std::pow(-iu * a, order) * r / (cplx{E, 0.0} - a);
            return val;
        };
        return num::CutRep::build(dens, breaks, wpoles, opts);
    };
    amp.cut_w1_ = weighted(1);
    amp.cut_w2_ = weighted(2);

    amp.cut_weight_ = amp.cut_.eval(0.0).real();
    // quadrature quality: frozen representation vs direct adaptive integration
    auto direct = num::integrate_segmented(
        [&](double E) { return cplx{c.density(E), 0.0} * std::exp(-iu * 1.7 * E); },
        breaks, 1e-11, 1e-11, 40000);
    amp.quad_err_ = std::abs(amp.cut_.eval(1.7) - direct.value) + direct.error;
    return amp;
}

cplx ChannelAmplitude::eval(double t, int order) const {
    cplx acc{0.0, 0.0};
    for (const auto& b : bound_)
        acc += b.weight * std::pow(cplx{0.0, -b.energy}, order) *
               std::exp(cplx{0.0, -b.energy * t});
    switch (order) {
        case 0: return acc + cut_.eval(t);
        case 1: return acc + cut_w1_.eval(t);
        case 2: return acc + cut_w2_.eval(t);
        default: throw std::invalid_argument("ChannelAmplitude: derivative order 0..2");
    }
}

double ChannelAmplitude::completeness() const {
    double w = 0.0;
    for (const auto& b : bound_) w += b.weight;
    return w + cut_weight_;
}

}  // namespace duodecay::onex
