#pragma once

#include <vector>

#include "tcm/integrator.hpp"
#include "tcm/norms.hpp"

namespace tcm {

// One time sample of the energy machinery. The CSV schema carries the first
// eight fields; condition_lhs_at_C is constant per run and lives in the
// manifest.
struct DiagnosticsRow {
    double t = 0.0;
    double A = 0.0;            // ||(w,c,theta)||_{H3}^2
    double B = 0.0;            // ||(w,grad c)||_{H3}^2 + ||grad theta||_{H2}^2
    double E = 0.0;            // ||f,g,h||_{H3}
    double crossing = 0.0;     // sum_{|l|<=2} <D^l c, D^l grad theta>
    double l2_energy = 0.0;    // 1/2 ||(u,v,theta)||_{L2}^2, recomposed state
    double energy_residual = 0.0;  // l2_energy - RK4-integrated energy tracker
    double max_linf = 0.0;     // max grid amplitude over (u1,u2,v1,v2,theta)
    double condition_lhs_at_C = 0.0;
};

DiagnosticsRow sample(Transformer& tr, const SamplePoint& sp, double condition_lhs_at_C = 0.0);

// Per-row pieces of the a priori estimate, precomputed once so the C_fit
// bisection is cheap:
//   cumE = int_0^t E ds,   cumG = int_0^t (||U,V||_{W4,inf} + ||V,grad^3 V||_{Linf}^2 + E) ds
// (trapezoid on sample times; linear-flow norms from the closed form).
struct GronwallData {
    std::vector<double> t;
    std::vector<double> A;
    std::vector<double> cumE;
    std::vector<double> cumG;
};

GronwallData prepare_gronwall(Transformer& tr, const std::vector<DiagnosticsRow>& rows,
                              const LinearData& data);

struct GronwallEnvelope {
    double C_fit = 0.0;
    std::vector<double> log_envelope;  // log of C(A0 + cumE) e^{C cumG} at sample times
    bool verdict = false;              // A(t) <= envelope(t) at every sample
};

// Envelope and verdict at a given constant (log-space, overflow-safe).
GronwallEnvelope gronwall_monitor(const GronwallData& gd, double C_fit);
GronwallEnvelope gronwall_monitor(Transformer& tr, const std::vector<DiagnosticsRow>& rows,
                                  const LinearData& data, double C_fit);

// Smallest constant in [0.1, 100] with a true verdict, bisected to 1%;
// NaN when even C = 100 fails.
double fit_minimal_C(const GronwallData& gd);

struct DecayReport {
    bool verdict = false;
    double early_sup = 0.0;  // sup of A over the first quarter of samples
    double late_sup = 0.0;   // sup of A over the last quarter
};

DecayReport decay_verdict(const std::vector<DiagnosticsRow>& rows, Termination termination);

}  // namespace tcm
