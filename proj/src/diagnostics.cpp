#include "tcm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tcm {

DiagnosticsRow sample(Transformer& tr, const SamplePoint& sp, double condition_lhs_at_C) {
    DiagnosticsRow row;
    row.t = sp.pert.t;
    const EnergyFunctionals fn = functionals(sp.pert.w, sp.pert.c, sp.pert.theta,
                                             sp.forcing.f, sp.forcing.g, sp.forcing.h);
    row.A = fn.A;
    row.B = fn.B;
    row.E = fn.E;
    row.crossing = fn.crossing;
    row.l2_energy = l2_energy(sp.full.u, sp.full.v, sp.full.theta);
    row.energy_residual = row.l2_energy - sp.q_energy;
    double mx = 0.0;
    for (const SpectralField* f : {&sp.full.u.x, &sp.full.u.y, &sp.full.v.x, &sp.full.v.y, &sp.full.theta})
        mx = std::max(mx, linf_norm(tr, *f));
    row.max_linf = mx;
    row.condition_lhs_at_C = condition_lhs_at_C;
    if (!std::isfinite(row.A + row.B + row.E + row.crossing + row.l2_energy))
        throw NonFinite("diagnostics row");
    return row;
}

GronwallData prepare_gronwall(Transformer& tr, const std::vector<DiagnosticsRow>& rows,
                              const LinearData& data) {
    if (rows.size() < 2) throw InsufficientSamples("gronwall monitor needs at least 2 rows");
    GronwallData gd;
    const std::size_t n = rows.size();
    gd.t.resize(n);
    gd.A.resize(n);
    gd.cumE.resize(n);
    gd.cumG.resize(n);
    std::vector<double> G(n);
    for (std::size_t i = 0; i < n; ++i) {
        gd.t[i] = rows[i].t;
        if (i > 0 && !(gd.t[i] > gd.t[i - 1]))
            throw ValidationError("rows", "sample times must strictly increase");
        gd.A[i] = rows[i].A;
        // Linear-flow norms come from the closed form, not from the discrete run.
        const LinearFlow flow = evolve_linear(data, rows[i].t);
        const double w4 = winf_norm(tr, flow.U, 4) + winf_norm(tr, flow.V, 4);
        // ||V, grad^3 V||_{Linf}: tensor-magnitude maxima, same convention as winf
        const double v0 = winf_norm(tr, flow.V, 0);
        const double g3 = winf_norm(tr, flow.V, 3) - winf_norm(tr, flow.V, 2);
        const double vterm = v0 + g3;
        G[i] = w4 + vterm * vterm + rows[i].E;
    }
    gd.cumE[0] = 0.0;
    gd.cumG[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double h = gd.t[i] - gd.t[i - 1];
        gd.cumE[i] = gd.cumE[i - 1] + 0.5 * h * (rows[i].E + rows[i - 1].E);
        gd.cumG[i] = gd.cumG[i - 1] + 0.5 * h * (G[i] + G[i - 1]);
    }
    return gd;
}

GronwallEnvelope gronwall_monitor(const GronwallData& gd, double C_fit) {
    if (!(C_fit > 0.0)) throw ValidationError("C_fit", "must be positive");
    GronwallEnvelope env;
    env.C_fit = C_fit;
    env.verdict = true;
    const double A0 = gd.A.empty() ? 0.0 : gd.A.front();
    env.log_envelope.resize(gd.t.size());
    for (std::size_t i = 0; i < gd.t.size(); ++i) {
        const double base = A0 + gd.cumE[i];
        const double log_env = (base > 0.0)
                                   ? std::log(C_fit) + std::log(base) + C_fit * gd.cumG[i]
                                   : -std::numeric_limits<double>::infinity();
        env.log_envelope[i] = log_env;
        if (gd.A[i] > 0.0 && std::log(gd.A[i]) > log_env) env.verdict = false;
    }
    return env;
}

GronwallEnvelope gronwall_monitor(Transformer& tr, const std::vector<DiagnosticsRow>& rows,
                                  const LinearData& data, double C_fit) {
    return gronwall_monitor(prepare_gronwall(tr, rows, data), C_fit);
}

double fit_minimal_C(const GronwallData& gd) {
    const double lo_edge = 0.1, hi_edge = 100.0;
    if (gronwall_monitor(gd, lo_edge).verdict) return lo_edge;
    if (!gronwall_monitor(gd, hi_edge).verdict) return std::numeric_limits<double>::quiet_NaN();
    double lo = lo_edge, hi = hi_edge;
    while (hi / lo > 1.01) {
        const double mid = std::sqrt(lo * hi);
        if (gronwall_monitor(gd, mid).verdict)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

DecayReport decay_verdict(const std::vector<DiagnosticsRow>& rows, Termination termination) {
    DecayReport rep;
    if (rows.empty()) return rep;
    const std::size_t n = rows.size();
    const std::size_t quarter = std::max<std::size_t>(1, n / 4);
    for (std::size_t i = 0; i < quarter; ++i) rep.early_sup = std::max(rep.early_sup, rows[i].A);
    for (std::size_t i = n - quarter; i < n; ++i) rep.late_sup = std::max(rep.late_sup, rows[i].A);
    rep.verdict = (termination == Termination::completed) && rep.late_sup <= rep.early_sup;
    return rep;
}

}  // namespace tcm
