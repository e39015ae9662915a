#pragma once

#include <vector>

#include "tcm/fft.hpp"
#include "tcm/initial_data.hpp"

namespace tcm {

// Closed-form state of the linear system at time t:
//   a(t) = e^{-t} a0,   m(t) = e^{t Laplace} m0,
//   U = (d2 a, -d1 a),  V = (m, m).
// Never time-stepped; this is the oracle the integrator is tested against.
struct LinearFlow {
    const LinearData* data = nullptr;
    double t = 0.0;
    SpectralField a;
    SpectralField m;
    VectorField U;
    VectorField V;

    const Grid& grid() const { return a.grid; }
};

LinearFlow evolve_linear(const LinearData& data, double t);

// f = -U.grad U - V.grad V - V div V, g = -U.grad V - V.grad U, h = -div V.
struct ForcingTriple {
    VectorField f;
    VectorField g;
    SpectralField h;
    double t = 0.0;
};

// Straight from the definitions above (dealiased pseudospectral products).
ForcingTriple forcing_raw(Transformer& tr, const LinearFlow& flow);

// The (d1+d2)-factored expansions; algebraically identical to the raw form
// but with the near-diagonal cancellation explicit. Default path.
ForcingTriple forcing_factored(Transformer& tr, const LinearFlow& flow);

// Collocation-space views of the linear flow, shared between the forcing
// evaluation and the perturbation right-hand side so each stage time costs
// one set of transforms.
struct LinearRealCache {
    RealField U1, U2;                    // (d2 a, -d1 a)
    RealField U11, U12, U21, U22;        // d_j U^i
    RealField Vm, Vmx, Vmy;              // m and its gradient
};

LinearRealCache make_linear_real_cache(Transformer& tr, const LinearFlow& flow);

// Factored forcing and the real cache from one pass of shared transforms.
struct StageEval {
    LinearFlow flow;
    ForcingTriple forcing;
    LinearRealCache cache;
};

StageEval evaluate_stage(Transformer& tr, const LinearData& data, double t);

struct DecaySample {
    double t = 0.0;
    double E = 0.0;
    double et_E = 0.0;       // e^t * E(t)
    double winf_U = 0.0;     // ||U(t)||_{W^{s,inf}}
    double winf_V = 0.0;
};

// Measured decay envelope of E(t) = ||f,g,h||_{H^3} and the W^{s,inf}
// norms of the linear flow along the given times.
std::vector<DecaySample> decay_envelope(Transformer& tr, const LinearData& data,
                                        const std::vector<double>& times, int s);

}  // namespace tcm
