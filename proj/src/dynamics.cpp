#include "tcm/dynamics.hpp"

#include <cmath>

#include "tcm/kernels.hpp"

namespace tcm {

namespace {

constexpr double time_match_tol = 1e-12;

void check_finite(const SpectralField& f, const char* what) {
    if (has_nonfinite(f)) throw NonFinite(what);
}

// Real-space views of a vector field and its gradient, shared by both
// right-hand sides. Transform count is kept down by pairing.
struct RealVec {
    RealField x, y;          // components
    RealField xx, xy;        // d1 comp1, d2 comp1
    RealField yx, yy;        // d1 comp2, d2 comp2

    RealVec(Transformer& tr, const VectorField& v) {
        tr.inverse_pair(v.x, v.y, x, y);
        tr.inverse_pair(derivative(v.x, 1, 0), derivative(v.x, 0, 1), xx, xy);
        tr.inverse_pair(derivative(v.y, 1, 0), derivative(v.y, 0, 1), yx, yy);
    }
};

// acc += vel . grad q for one scalar component with gradient (qx, qy).
void advect_into(std::span<double> acc, const RealField& vx, const RealField& vy,
                 const RealField& qx, const RealField& qy) {
    kernels::multiply_add(vx.values, qx.values, acc);
    kernels::multiply_add(vy.values, qy.values, acc);
}

SpectralField laplacian(const SpectralField& f) {
    const Grid& g = f.grid;
    SpectralField out(g);
    const int n = g.n();
    for (int i = 0; i < n; ++i) {
        const double x1 = g.xi(i);
        for (int j = 0; j < n; ++j) {
            const double x2 = g.xi(j);
            const std::size_t k = g.idx(i, j);
            out.coeffs[k] = -(x1 * x1 + x2 * x2) * f.coeffs[k];
        }
    }
    return out;
}

}  // namespace

Tendency rhs_full(Transformer& tr, const TCMState& state, bool include_stiff) {
    const Grid& g = state.grid();
    check_finite(state.u.x, "rhs_full: u");
    check_finite(state.v.x, "rhs_full: v");
    check_finite(state.theta, "rhs_full: theta");

    const RealVec u(tr, state.u);
    const RealVec v(tr, state.v);
    RealField tx(g), ty(g);
    tr.inverse_pair(derivative(state.theta, 1, 0), derivative(state.theta, 0, 1), tx, ty);

    // One fused pass for every quadratic term.
    RealField acc1(g), acc2(g), vv11(g), vv12(g), vv22(g), theta_adv(g), vacc1(g), vacc2(g);
    const std::size_t n2 = g.size();
#pragma omp parallel for schedule(static) if (n2 >= 1048576)
    for (long ii = 0; ii < static_cast<long>(n2); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const double u1 = u.x.values[i], u2 = u.y.values[i];
        const double v1 = v.x.values[i], v2 = v.y.values[i];
        acc1.values[i] = u1 * u.xx.values[i] + u2 * u.xy.values[i];  // u.grad u1
        acc2.values[i] = u1 * u.yx.values[i] + u2 * u.yy.values[i];
        vv11.values[i] = v1 * v1;                                    // v x v
        vv12.values[i] = v1 * v2;
        vv22.values[i] = v2 * v2;
        theta_adv.values[i] = u1 * tx.values[i] + u2 * ty.values[i];
        vacc1.values[i] = u1 * v.xx.values[i] + u2 * v.xy.values[i]  // u.grad v1
                          + v1 * u.xx.values[i] + v2 * u.xy.values[i];  // v.grad u1
        vacc2.values[i] = u1 * v.yx.values[i] + u2 * v.yy.values[i]
                          + v1 * u.yx.values[i] + v2 * u.yy.values[i];
    }
    SpectralField Nu1(g), Nu2(g);
    tr.forward_pair(acc1, acc2, Nu1, Nu2);
    SpectralField cvv11(g), cvv12(g), cvv22(g), ctheta(g);
    tr.forward_pair(vv11, vv12, cvv11, cvv12);
    tr.forward_pair(vv22, theta_adv, cvv22, ctheta);
    SpectralField Nv1(g), Nv2(g);
    tr.forward_pair(vacc1, vacc2, Nv1, Nv2);

    for (SpectralField* f : {&Nu1, &Nu2, &cvv11, &cvv12, &cvv22, &ctheta, &Nv1, &Nv2})
        dealias_in_place(*f);

    // du = -P[u.grad u + div(v x v)] - mu u
    VectorField N(Nu1 + derivative(cvv11, 1, 0) + derivative(cvv12, 0, 1),
                  Nu2 + derivative(cvv12, 1, 0) + derivative(cvv22, 0, 1));
    Tendency out;
    out.du = -1.0 * leray_project(N);
    out.dv = VectorField(-1.0 * Nv1 - derivative(state.theta, 1, 0),
                         -1.0 * Nv2 - derivative(state.theta, 0, 1));
    out.dtheta = -1.0 * ctheta - divergence(state.v);
    if (include_stiff) {
        out.du = out.du - state.mu * state.u;
        out.dv = out.dv + VectorField(state.nu * laplacian(state.v.x), state.nu * laplacian(state.v.y));
    }
    return out;
}

Tendency rhs_perturbation(Transformer& tr, const PerturbationState& p, const LinearFlow& flow,
                          const ForcingTriple& forcing, bool include_stiff,
                          const LinearRealCache* cache) {
    if (std::abs(flow.t - p.t) > time_match_tol || std::abs(forcing.t - p.t) > time_match_tol)
        throw TimeMismatch("rhs_perturbation: flow/forcing time differs from state time");
    const Grid& g = p.grid();
    check_finite(p.w.x, "rhs_perturbation: w");
    check_finite(p.c.x, "rhs_perturbation: c");
    check_finite(p.theta, "rhs_perturbation: theta");

    LinearRealCache local;
    if (!cache) {
        local = make_linear_real_cache(tr, flow);
        cache = &local;
    }
    const RealVec w(tr, p.w);
    const RealVec c(tr, p.c);
    RealField tx(g), ty(g);
    tr.inverse_pair(derivative(p.theta, 1, 0), derivative(p.theta, 0, 1), tx, ty);

    // One fused pass per equation; the loop body spells out exactly the
    // terms of the renormalized system.
    RealField acc1(g), acc2(g), cacc1(g), cacc2(g), tacc(g);
    const std::size_t n2 = g.size();
#pragma omp parallel for schedule(static) if (n2 >= 1048576)
    for (long ii = 0; ii < static_cast<long>(n2); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const double w1 = w.x.values[i], w2 = w.y.values[i];
        const double c1 = c.x.values[i], c2 = c.y.values[i];
        const double U1 = cache->U1.values[i], U2 = cache->U2.values[i];
        const double U11 = cache->U11.values[i], U12 = cache->U12.values[i];
        const double U21 = cache->U21.values[i], U22 = cache->U22.values[i];
        const double m = cache->Vm.values[i];
        const double m1 = cache->Vmx.values[i], m2 = cache->Vmy.values[i];
        const double divc = c.xx.values[i] + c.yy.values[i];
        const double divV = m1 + m2;

        // w-equation (inside P[...], sign flipped when projected below)
        acc1.values[i] = w1 * w.xx.values[i] + w2 * w.xy.values[i]     // w.grad w
                         + U1 * w.xx.values[i] + U2 * w.xy.values[i]   // U.grad w
                         + c1 * c.xx.values[i] + c2 * c.xy.values[i]   // c.grad c
                         + c1 * divc                                   // c div c
                         + c1 * m1 + c2 * m2                           // c.grad V1
                         + c1 * divV                                   // c1 div V
                         + m * (c.xx.values[i] + c.xy.values[i])       // V.grad c1
                         + m * divc                                    // V1 div c
                         + w1 * U11 + w2 * U12;                        // w.grad U1
        acc2.values[i] = w1 * w.yx.values[i] + w2 * w.yy.values[i]
                         + U1 * w.yx.values[i] + U2 * w.yy.values[i]
                         + c1 * c.yx.values[i] + c2 * c.yy.values[i]
                         + c2 * divc
                         + c1 * m1 + c2 * m2                           // c.grad V2 (V2 = m)
                         + c2 * divV
                         + m * (c.yx.values[i] + c.yy.values[i])
                         + m * divc
                         + w1 * U21 + w2 * U22;

        // c-equation
        cacc1.values[i] = w1 * c.xx.values[i] + w2 * c.xy.values[i]    // w.grad c
                          + U1 * c.xx.values[i] + U2 * c.xy.values[i]  // U.grad c
                          + c1 * w.xx.values[i] + c2 * w.xy.values[i]  // c.grad w
                          + m * (w.xx.values[i] + w.xy.values[i])      // V.grad w
                          + c1 * U11 + c2 * U12                        // c.grad U
                          + w1 * m1 + w2 * m2;                         // w.grad V
        cacc2.values[i] = w1 * c.yx.values[i] + w2 * c.yy.values[i]
                          + U1 * c.yx.values[i] + U2 * c.yy.values[i]
                          + c1 * w.yx.values[i] + c2 * w.yy.values[i]
                          + m * (w.yx.values[i] + w.yy.values[i])
                          + c1 * U21 + c2 * U22
                          + w1 * m1 + w2 * m2;

        // theta-equation
        tacc.values[i] = (w1 + U1) * tx.values[i] + (w2 + U2) * ty.values[i];
    }

    SpectralField Aw1(g), Aw2(g), Ac1(g), Ac2(g), At(g);
    tr.forward_pair(acc1, acc2, Aw1, Aw2);
    tr.forward_pair(cacc1, cacc2, Ac1, Ac2);
    tr.forward_into(tacc, At);
    for (SpectralField* f : {&Aw1, &Aw2, &Ac1, &Ac2, &At}) dealias_in_place(*f);

    Tendency out;
    out.du = leray_project(VectorField(forcing.f.x - Aw1, forcing.f.y - Aw2));
    out.dv = VectorField(forcing.g.x - Ac1 - derivative(p.theta, 1, 0),
                         forcing.g.y - Ac2 - derivative(p.theta, 0, 1));
    out.dtheta = forcing.h - At - divergence(p.c);
    if (include_stiff) {
        out.du = out.du - p.w;
        out.dv = out.dv + VectorField(laplacian(p.c.x), laplacian(p.c.y));
    }
    return out;
}

SpectralField compute_pressure(Transformer& tr, const TCMState& state) {
    // Unprojected momentum nonlinearity
    const RealVec u(tr, state.u);
    const RealVec v(tr, state.v);
    const Grid& g = state.grid();
    RealField acc1(g), acc2(g);
    advect_into(acc1.values, u.x, u.y, u.xx, u.xy);
    advect_into(acc2.values, u.x, u.y, u.yx, u.yy);
    SpectralField Nu1(g), Nu2(g);
    tr.forward_pair(acc1, acc2, Nu1, Nu2);
    RealField vv11(g), vv12(g), vv22(g);
    kernels::multiply(v.x.values, v.x.values, vv11.values);
    kernels::multiply(v.x.values, v.y.values, vv12.values);
    kernels::multiply(v.y.values, v.y.values, vv22.values);
    SpectralField cvv11(g), cvv12(g), cvv22(g);
    tr.forward_pair(vv11, vv12, cvv11, cvv12);
    tr.forward_into(vv22, cvv22);
    for (SpectralField* f : {&Nu1, &Nu2, &cvv11, &cvv12, &cvv22}) dealias_in_place(*f);
    const VectorField N(Nu1 + derivative(cvv11, 1, 0) + derivative(cvv12, 0, 1),
                        Nu2 + derivative(cvv12, 1, 0) + derivative(cvv22, 0, 1));
    // -Lap p = div N, zero-mean gauge
    const SpectralField divN = divergence(N);
    SpectralField p(g);
    const int n = g.n();
    for (int i = 0; i < n; ++i) {
        const double x1 = g.xi(i);
        for (int j = 0; j < n; ++j) {
            const double x2 = g.xi(j);
            const double q = x1 * x1 + x2 * x2;
            if (q > 0.0) p.coeffs[g.idx(i, j)] = -divN.coeffs[g.idx(i, j)] / q;
        }
    }
    return p;
}

TCMState recompose(const PerturbationState& p, const LinearFlow& flow, double mu, double nu) {
    if (std::abs(flow.t - p.t) > time_match_tol)
        throw TimeMismatch("recompose: flow time differs from state time");
    TCMState out;
    out.u = flow.U + p.w;
    out.v = flow.V + p.c;
    out.theta = p.theta;
    out.t = p.t;
    out.mu = mu;
    out.nu = nu;
    return out;
}

PerturbationState decompose(const TCMState& state, const LinearFlow& flow) {
    if (std::abs(flow.t - state.t) > time_match_tol)
        throw TimeMismatch("decompose: flow time differs from state time");
    PerturbationState out;
    out.w = state.u - flow.U;
    out.c = state.v - flow.V;
    out.theta = state.theta;
    out.t = state.t;
    return out;
}

double dissipation_rate(const VectorField& u, const VectorField& v, double mu, double nu) {
    const Grid& g = u.grid();
    const double S2 = g.side() * g.side();
    double du = 0.0, dv = 0.0;
    const int n = g.n();
    for (int i = 0; i < n; ++i) {
        const double x1 = g.xi(i);
        for (int j = 0; j < n; ++j) {
            const double q = x1 * x1 + g.xi(j) * g.xi(j);
            const std::size_t k = g.idx(i, j);
            du += std::norm(u.x.coeffs[k]) + std::norm(u.y.coeffs[k]);
            dv += q * (std::norm(v.x.coeffs[k]) + std::norm(v.y.coeffs[k]));
        }
    }
    return S2 * (mu * du + nu * dv);
}

double l2_energy(const VectorField& u, const VectorField& v, const SpectralField& theta) {
    const double nu2 = l2_norm(u), nv2 = l2_norm(v), nt = l2_norm(theta);
    return 0.5 * (nu2 * nu2 + nv2 * nv2 + nt * nt);
}

}  // namespace tcm
