#include "tcm/linear_flow.hpp"

#include <cmath>

#include "tcm/norms.hpp"

namespace tcm {

LinearFlow evolve_linear(const LinearData& data, double t) {
    if (!(t >= 0.0)) throw ValidationError("t", "linear flow wants t >= 0");
    const Grid& g = data.grid();
    LinearFlow flow;
    flow.data = &data;
    flow.t = t;
    flow.a = SpectralField(g);
    flow.m = SpectralField(g);
    const double damp = std::exp(-t);
    const int n = g.n();
    // e^{-|xi|^2 t} factored per axis
    std::vector<double> heat(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) heat[static_cast<std::size_t>(i)] = std::exp(-g.xi(i) * g.xi(i) * t);
    for (int i = 0; i < n; ++i) {
        const double h1 = heat[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            const std::size_t k = g.idx(i, j);
            flow.a.coeffs[k] = damp * data.a0.coeffs[k];
            flow.m.coeffs[k] = h1 * heat[static_cast<std::size_t>(j)] * data.m0.coeffs[k];
        }
    }
    flow.U = perp_gradient(flow.a);
    flow.V = VectorField(flow.m, flow.m);
    return flow;
}

ForcingTriple forcing_raw(Transformer& tr, const LinearFlow& flow) {
    const auto& U = flow.U;
    const auto& V = flow.V;
    auto advect = [&](const VectorField& vel, const SpectralField& q) {
        return dealiased_product(tr, vel.x, derivative(q, 1, 0)) +
               dealiased_product(tr, vel.y, derivative(q, 0, 1));
    };
    const SpectralField divV = divergence(V);
    ForcingTriple out;
    out.t = flow.t;
    out.f = VectorField(-1.0 * (advect(U, U.x) + advect(V, V.x) + dealiased_product(tr, V.x, divV)),
                        -1.0 * (advect(U, U.y) + advect(V, V.y) + dealiased_product(tr, V.y, divV)));
    out.g = VectorField(-1.0 * (advect(U, V.x) + advect(V, U.x)),
                        -1.0 * (advect(U, V.y) + advect(V, U.y)));
    out.h = -1.0 * divV;
    return out;
}

ForcingTriple forcing_factored(Transformer& tr, const LinearFlow& flow) {
    const SpectralField& a = flow.a;
    const SpectralField& m = flow.m;
    // Every product carries one (d1+d2) factor on a or m:
    //   f1 = (d1+d2)a d2d2 a - d2 a d2(d1+d2)a - 2 m (d1+d2)m
    //   f2 = -(d1+d2)a d1d2 a + d2 a d1(d1+d2)a - 2 m (d1+d2)m
    //   g1 = (d1+d2)a d2 m - d2 a (d1+d2)m - m (d1+d2)d2 a
    //   g2 = (d1+d2)a d2 m - d2 a (d1+d2)m + m (d1+d2)d1 a
    //   h  = -(d1+d2)m
    const SpectralField da = diagonal_derivative(a);
    const SpectralField dm = diagonal_derivative(m);
    const SpectralField a2 = derivative(a, 0, 1);
    const SpectralField m_dm = dealiased_product(tr, m, dm);

    SpectralField f1 = dealiased_product(tr, da, derivative(a, 0, 2)) -
                       dealiased_product(tr, a2, derivative(da, 0, 1)) - 2.0 * m_dm;
    SpectralField f2 = -1.0 * dealiased_product(tr, da, derivative(a, 1, 1)) +
                       dealiased_product(tr, a2, derivative(da, 1, 0)) - 2.0 * m_dm;
    const SpectralField g_common =
        dealiased_product(tr, da, derivative(m, 0, 1)) - dealiased_product(tr, a2, dm);
    SpectralField g1 = g_common - dealiased_product(tr, m, derivative(da, 0, 1));
    SpectralField g2 = g_common + dealiased_product(tr, m, derivative(da, 1, 0));

    ForcingTriple out;
    out.t = flow.t;
    out.f = VectorField(std::move(f1), std::move(f2));
    out.g = VectorField(std::move(g1), std::move(g2));
    out.h = -1.0 * dm;
    return out;
}

LinearRealCache make_linear_real_cache(Transformer& tr, const LinearFlow& flow) {
    const Grid& g = flow.grid();
    LinearRealCache c;
    RealField a1(g);
    tr.inverse_pair(derivative(flow.a, 1, 0), derivative(flow.a, 0, 1), a1, c.U1);
    tr.inverse_pair(derivative(flow.a, 2, 0), derivative(flow.a, 1, 1), c.U21, c.U11);
    tr.inverse_pair(derivative(flow.a, 0, 2), derivative(flow.m, 1, 0), c.U12, c.Vmx);
    tr.inverse_pair(derivative(flow.m, 0, 1), flow.m, c.Vmy, c.Vm);
    c.U2 = RealField(g);
    c.U22 = RealField(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        c.U2.values[i] = -a1.values[i];
        c.U22.values[i] = -c.U11.values[i];  // d2 U^2 = -d2 d1 a
        c.U21.values[i] = -c.U21.values[i];  // d1 U^2 = -d1 d1 a
    }
    // U11 = d1 U^1 = d1 d2 a, U12 = d2 U^1 = d2 d2 a: already in place
    return c;
}

StageEval evaluate_stage(Transformer& tr, const LinearData& data, double t) {
    StageEval se;
    se.flow = evolve_linear(data, t);
    se.cache = make_linear_real_cache(tr, se.flow);
    const Grid& g = se.flow.grid();

    // Real-space pieces: U1 = d2 a, U2 = -d1 a and the second derivatives
    // recover every factored term.
    const RealField& a2 = se.cache.U1;          // d2 a
    RealField a1(g);
    for (std::size_t i = 0; i < g.size(); ++i) a1.values[i] = -se.cache.U2.values[i];
    const RealField& a12 = se.cache.U11;        // d1 d2 a
    const RealField& a22 = se.cache.U12;        // d2 d2 a
    RealField a11(g);
    for (std::size_t i = 0; i < g.size(); ++i) a11.values[i] = -se.cache.U21.values[i];
    const RealField& m = se.cache.Vm;
    const RealField& m1 = se.cache.Vmx;
    const RealField& m2 = se.cache.Vmy;

    RealField f1(g), f2(g), g1(g), g2(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double da = a1.values[i] + a2.values[i];          // (d1+d2) a
        const double dm = m1.values[i] + m2.values[i];          // (d1+d2) m
        const double da_1 = a11.values[i] + a12.values[i];      // d1 (d1+d2) a
        const double da_2 = a12.values[i] + a22.values[i];      // d2 (d1+d2) a
        const double mdm2 = 2.0 * m.values[i] * dm;
        f1.values[i] = da * a22.values[i] - a2.values[i] * da_2 - mdm2;
        f2.values[i] = -da * a12.values[i] + a2.values[i] * da_1 - mdm2;
        const double gc = da * m2.values[i] - a2.values[i] * dm;
        g1.values[i] = gc - m.values[i] * da_2;
        g2.values[i] = gc + m.values[i] * da_1;
    }
    SpectralField cf1(g), cf2(g), cg1(g), cg2(g);
    tr.forward_pair(f1, f2, cf1, cf2);
    tr.forward_pair(g1, g2, cg1, cg2);
    for (SpectralField* f : {&cf1, &cf2, &cg1, &cg2}) dealias_in_place(*f);

    se.forcing.t = t;
    se.forcing.f = VectorField(std::move(cf1), std::move(cf2));
    se.forcing.g = VectorField(std::move(cg1), std::move(cg2));
    se.forcing.h = -1.0 * diagonal_derivative(se.flow.m);
    return se;
}

std::vector<DecaySample> decay_envelope(Transformer& tr, const LinearData& data,
                                        const std::vector<double>& times, int s) {
    if (times.empty()) throw ValidationError("times", "decay_envelope wants a nonempty time list");
    double prev = -1.0;
    for (double t : times) {
        if (!(t >= 0.0) || t < prev)
            throw ValidationError("times", "must be nondecreasing and >= 0");
        prev = t;
    }
    std::vector<DecaySample> out;
    out.reserve(times.size());
    for (double t : times) {
        const LinearFlow flow = evolve_linear(data, t);
        const ForcingTriple fr = forcing_factored(tr, flow);
        DecaySample smp;
        smp.t = t;
        smp.E = multinorm({&fr.f.x, &fr.f.y, &fr.g.x, &fr.g.y, &fr.h}, 3);
        smp.et_E = std::exp(t) * smp.E;
        smp.winf_U = winf_norm(tr, flow.U, s);
        smp.winf_V = winf_norm(tr, flow.V, s);
        out.push_back(smp);
    }
    return out;
}

}  // namespace tcm
