#include "tcm/integrator.hpp"

#include <array>
#include <cmath>

#include "tcm/kernels.hpp"
#include "tcm/norms.hpp"

namespace tcm {

const char* to_string(Termination t) {
    switch (t) {
        case Termination::completed: return "completed";
        case Termination::blowup_detected: return "blowup_detected";
        default: return "nonfinite";
    }
}

const char* to_string(Formulation f) {
    return f == Formulation::full ? "full" : "perturbation";
}

namespace {

// The five integrated scalar components: (u1, u2, v1, v2, theta) or the
// perturbation analog. Components 0,1 carry the damping factor, 2,3 the
// heat factor, 4 none.
struct Sv {
    std::array<SpectralField, 5> f;

    explicit Sv(const Grid& g) : f{SpectralField(g), SpectralField(g), SpectralField(g),
                                   SpectralField(g), SpectralField(g)} {}
    Sv() = default;
};

Sv from_tendency(Tendency&& t) {
    Sv s;
    s.f[0] = std::move(t.du.x);
    s.f[1] = std::move(t.du.y);
    s.f[2] = std::move(t.dv.x);
    s.f[3] = std::move(t.dv.y);
    s.f[4] = std::move(t.dtheta);
    return s;
}

VectorField first_pair(const Sv& s) { return VectorField(s.f[0], s.f[1]); }
VectorField second_pair(const Sv& s) { return VectorField(s.f[2], s.f[3]); }

// mu||u||^2 + nu||grad v||^2 at a stage state; for the perturbation
// formulation the linear flow is added back first.
double stage_dissipation(const Sv& s, const LinearFlow* flow, double mu, double nu) {
    const Grid& g = s.f[0].grid;
    const double S2 = g.side() * g.side();
    double du = 0.0, dv = 0.0;
    const int n = g.n();
    for (int i = 0; i < n; ++i) {
        const double x1 = g.xi(i);
        for (int j = 0; j < n; ++j) {
            const double q = x1 * x1 + g.xi(j) * g.xi(j);
            const std::size_t k = g.idx(i, j);
            cplx u1 = s.f[0].coeffs[k], u2 = s.f[1].coeffs[k];
            cplx v1 = s.f[2].coeffs[k], v2 = s.f[3].coeffs[k];
            if (flow) {
                u1 += flow->U.x.coeffs[k];
                u2 += flow->U.y.coeffs[k];
                v1 += flow->m.coeffs[k];
                v2 += flow->m.coeffs[k];
            }
            du += std::norm(u1) + std::norm(u2);
            dv += q * (std::norm(v1) + std::norm(v2));
        }
    }
    return S2 * (mu * du + nu * dv);
}

using StageFlow = StageEval;

struct Stepper {
    Transformer& tr;
    const StepperConfig& cfg;
    const LinearData* data = nullptr;   // perturbation formulation only
    std::vector<double> ev_half;        // e^{-nu |xi|^2 dt/2}
    double eu_half = 1.0;               // e^{-mu dt/2}
    Sv ws;                              // reused stage buffer

    Stepper(Transformer& t, const StepperConfig& c, const LinearData* d)
        : tr(t), cfg(c), data(d), ws(t.grid()) {
        const Grid& g = tr.grid();
        const double h = cfg.dt / 2.0;
        eu_half = std::exp(-cfg.mu * h);
        ev_half.resize(g.size());
        const int n = g.n();
        for (int i = 0; i < n; ++i) {
            const double x1 = g.xi(i);
            for (int j = 0; j < n; ++j)
                ev_half[g.idx(i, j)] = std::exp(-cfg.nu * (x1 * x1 + g.xi(j) * g.xi(j)) * h);
        }
    }

    // ws = E(y + a x) / E y + a x / E^2 y + a E x, per the stage pattern
    enum class StagePat { mul_add, add_mul, mul2_add };
    void fill_stage(StagePat pat, const Sv& y, double a, const Sv& x) {
        for (int i = 0; i < 5; ++i) {
            std::span<cplx> out(ws.f[i].coeffs);
            std::span<const cplx> yy(y.f[i].coeffs), xx(x.f[i].coeffs);
            const bool heat = (i == 2 || i == 3);
            const double es = (i == 4) ? 1.0 : eu_half;
            switch (pat) {
                case StagePat::mul_add:
                    heat ? kernels::stage_mul_add(out, ev_half, yy, a, xx)
                         : kernels::stage_mul_add(out, es, yy, a, xx);
                    break;
                case StagePat::add_mul:
                    heat ? kernels::stage_add_mul(out, ev_half, yy, a, xx)
                         : kernels::stage_add_mul(out, es, yy, a, xx);
                    break;
                case StagePat::mul2_add:
                    heat ? kernels::stage_mul2_add(out, ev_half, yy, a, xx)
                         : kernels::stage_mul2_add(out, es, yy, a, xx);
                    break;
            }
        }
    }

    Sv rhs(const Sv& s, double t, const StageFlow* ff) const {
        if (cfg.linear_only) return Sv(tr.grid());
        if (cfg.formulation == Formulation::full) {
            TCMState st{first_pair(s), second_pair(s), s.f[4], t, cfg.mu, cfg.nu};
            return from_tendency(rhs_full(tr, st, /*include_stiff=*/false));
        }
        PerturbationState p{first_pair(s), second_pair(s), s.f[4], t};
        return from_tendency(rhs_perturbation(tr, p, ff->flow, ff->forcing,
                                              /*include_stiff=*/false, &ff->cache));
    }

    // One IF-RK4 step from t; curr/half/next hold the linear flow at the
    // three stage times (perturbation formulation only, else null).
    void step(Sv& y, double& q, double t, const StageFlow* curr, const StageFlow* half,
              const StageFlow* next) {
        const double dt = cfg.dt;
        const double mu = cfg.mu, nu = cfg.nu;
        auto flow_of = [](const StageFlow* ff) { return ff ? &ff->flow : nullptr; };

        const Sv k1 = rhs(y, t, curr);
        const double q1 = -stage_dissipation(y, flow_of(curr), mu, nu);

        fill_stage(StagePat::mul_add, y, dt / 2.0, k1);   // E (y + dt/2 k1)
        const Sv k2 = rhs(ws, t + dt / 2.0, half);
        const double q2 = -stage_dissipation(ws, flow_of(half), mu, nu);

        fill_stage(StagePat::add_mul, y, dt / 2.0, k2);   // E y + dt/2 k2
        const Sv k3 = rhs(ws, t + dt / 2.0, half);
        const double q3 = -stage_dissipation(ws, flow_of(half), mu, nu);

        fill_stage(StagePat::mul2_add, y, dt, k3);        // E^2 y + dt E k3
        const Sv k4 = rhs(ws, t + dt, next);
        const double q4 = -stage_dissipation(ws, flow_of(next), mu, nu);

        // y <- E^2 (y + dt/6 k1) + dt/3 E (k2 + k3) + dt/6 k4
        for (int i = 0; i < 5; ++i) {
            std::span<cplx> yy(y.f[i].coeffs);
            if (i == 2 || i == 3)
                kernels::rk4_combine(yy, ev_half, dt / 6.0, k1.f[i].coeffs, k2.f[i].coeffs,
                                     k3.f[i].coeffs, k4.f[i].coeffs);
            else
                kernels::rk4_combine(yy, (i == 4) ? 1.0 : eu_half, dt / 6.0, k1.f[i].coeffs,
                                     k2.f[i].coeffs, k3.f[i].coeffs, k4.f[i].coeffs);
        }
        q += dt / 6.0 * (q1 + 2.0 * q2 + 2.0 * q3 + q4);
    }
};

}  // namespace

double advisory_cfl(Transformer& tr, const InitialCondition& ic, const StepperConfig& cfg) {
    const Grid& g = ic.linear.grid();
    const VectorField u0 = ic.u0();
    const VectorField v0 = ic.v0();
    double vmax = 0.0;
    for (const SpectralField* f : {&u0.x, &u0.y, &v0.x, &v0.y})
        vmax = std::max(vmax, linf_norm(tr, *f));
    const double xi_max = g.xi_spacing() * (g.n() / 2.0);
    return cfg.dt * xi_max * vmax;
}

TCMState step_full(Transformer& tr, const TCMState& state, double dt, bool linear_only) {
    StepperConfig cfg;
    cfg.dt = dt;
    cfg.t_end = dt;
    cfg.mu = state.mu;
    cfg.nu = state.nu;
    cfg.formulation = Formulation::full;
    cfg.linear_only = linear_only;
    Stepper st(tr, cfg, nullptr);
    Sv y(state.grid());
    y.f[0] = state.u.x; y.f[1] = state.u.y;
    y.f[2] = state.v.x; y.f[3] = state.v.y;
    y.f[4] = state.theta;
    double q = 0.0;
    st.step(y, q, state.t, nullptr, nullptr, nullptr);
    TCMState out{first_pair(y), second_pair(y), y.f[4], state.t + dt, state.mu, state.nu};
    return out;
}

Trajectory integrate(Transformer& tr, const InitialCondition& ic, const StepperConfig& cfg,
                     const SampleSink& sink) {
    if (!(cfg.dt > 0.0)) throw ValidationError("dt", "must be positive");
    if (!(cfg.t_end >= cfg.dt)) throw ValidationError("t_end", "needs dt <= t_end");
    if (cfg.formulation == Formulation::perturbation && (cfg.mu != 1.0 || cfg.nu != 1.0))
        throw ValidationError("formulation", "the renormalized system fixes mu = nu = 1");

    const Grid& g = ic.linear.grid();
    const long nsteps = std::max<long>(1, std::llround(cfg.t_end / cfg.dt));
    const bool pert = cfg.formulation == Formulation::perturbation;

    Sv y(g);
    if (pert) {
        y.f[0] = ic.w0.x; y.f[1] = ic.w0.y;
        y.f[2] = ic.c0.x; y.f[3] = ic.c0.y;
        y.f[4] = ic.theta0;
    } else {
        const VectorField u0 = ic.u0();
        const VectorField v0 = ic.v0();
        y.f[0] = u0.x; y.f[1] = u0.y;
        y.f[2] = v0.x; y.f[3] = v0.y;
        y.f[4] = ic.theta0;
    }
    double q = l2_energy(ic.u0(), ic.v0(), ic.theta0);

    Stepper stepper(tr, cfg, &ic.linear);

    // H3 of the integrated state, for the blow-up threshold.
    std::vector<double> m3(g.size());
    {
        const int n = g.n();
        for (int i = 0; i < n; ++i) {
            const double q1 = g.xi(i) * g.xi(i);
            for (int j = 0; j < n; ++j) {
                const double q2 = g.xi(j) * g.xi(j);
                double acc = 0.0, p1 = 1.0;
                for (int a1 = 0; a1 <= 3; ++a1) {
                    double p2 = 1.0;
                    for (int a2 = 0; a2 + a1 <= 3; ++a2) {
                        acc += p1 * p2;
                        p2 *= q2;
                    }
                    p1 *= q1;
                }
                m3[g.idx(i, j)] = acc;
            }
        }
    }
    const double S2 = g.side() * g.side();
    auto state_h3 = [&](const Sv& s) {
        double sum = 0.0;
        for (int i = 0; i < 5; ++i) sum += kernels::weighted_abs2_sum(s.f[i].coeffs, m3);
        return std::sqrt(S2 * sum);
    };
    auto state_finite = [&](const Sv& s) {
        for (int i = 0; i < 5; ++i)
            if (has_nonfinite(s.f[i])) return false;
        return true;
    };

    Trajectory traj;
    auto emit = [&](long step_index, double t) {
        if (!sink) {
            traj.sample_times.push_back(t);
            return;
        }
        const StageFlow ff = evaluate_stage(tr, ic.linear, t);
        PerturbationState p;
        TCMState full;
        if (pert) {
            p = PerturbationState{first_pair(y), second_pair(y), y.f[4], t};
            full = recompose(p, ff.flow, cfg.mu, cfg.nu);
        } else {
            full = TCMState{first_pair(y), second_pair(y), y.f[4], t, cfg.mu, cfg.nu};
            p = decompose(full, ff.flow);
        }
        sink(SamplePoint{p, ff.flow, ff.forcing, full, q, step_index});
        traj.sample_times.push_back(t);
    };

    auto finish = [&](Termination term, long steps, double t) {
        traj.termination = term;
        traj.steps_taken = steps;
        traj.q_energy = q;
        traj.state_h3 = state_h3(y);
        const LinearFlow flow = evolve_linear(ic.linear, t);
        if (pert) {
            traj.final_pert = PerturbationState{first_pair(y), second_pair(y), y.f[4], t};
            traj.final_full = recompose(traj.final_pert, flow, cfg.mu, cfg.nu);
        } else {
            traj.final_full = TCMState{first_pair(y), second_pair(y), y.f[4], t, cfg.mu, cfg.nu};
            traj.final_pert = decompose(traj.final_full, flow);
        }
        return traj;
    };

    // Degenerate-threshold semantics: flag before the first step.
    if (state_h3(y) > cfg.blowup_threshold) {
        emit(0, 0.0);
        return finish(Termination::blowup_detected, 0, 0.0);
    }
    emit(0, 0.0);

    StageFlow curr, half, next;
    if (pert) curr = evaluate_stage(tr, ic.linear, 0.0);

    for (long i = 0; i < nsteps; ++i) {
        const double t = static_cast<double>(i) * cfg.dt;
        const double tn = static_cast<double>(i + 1) * cfg.dt;
        if (pert) {
            half = evaluate_stage(tr, ic.linear, t + cfg.dt / 2.0);
            next = evaluate_stage(tr, ic.linear, tn);
        }
        stepper.step(y, q, t, pert ? &curr : nullptr, pert ? &half : nullptr, pert ? &next : nullptr);
        if (pert) curr = std::move(next);

        if (!state_finite(y) || !std::isfinite(q)) return finish(Termination::nonfinite, i + 1, tn);
        // div u stays projected; a violation means the numbers went bad.
        const double rdiv = relative_divergence(first_pair(y));
        if (rdiv > 1e-8) return finish(Termination::nonfinite, i + 1, tn);
        if (state_h3(y) > cfg.blowup_threshold) {
            emit(i + 1, tn);
            return finish(Termination::blowup_detected, i + 1, tn);
        }

        const bool due = cfg.sample_every > 0 && ((i + 1) % cfg.sample_every == 0);
        if (due || i + 1 == nsteps) emit(i + 1, tn);
    }
    return finish(Termination::completed, nsteps, static_cast<double>(nsteps) * cfg.dt);
}

}  // namespace tcm
