#pragma once

#include "tcm/linear_flow.hpp"

namespace tcm {

// State of the full system (1.1)-style formulation.
struct TCMState {
    VectorField u;      // barotropic mode, divergence-free
    VectorField v;      // first baroclinic mode
    SpectralField theta;
    double t = 0.0;
    double mu = 1.0;
    double nu = 1.0;

    const Grid& grid() const { return theta.grid; }
};

// State of the renormalized system around the closed-form linear flow.
struct PerturbationState {
    VectorField w;      // u - U, divergence-free
    VectorField c;      // v - V
    SpectralField theta;
    double t = 0.0;

    const Grid& grid() const { return theta.grid; }
};

struct Tendency {
    VectorField du;     // dw in perturbation form
    VectorField dv;     // dc
    SpectralField dtheta;
};

// Full-system tendency:
//   du     = -P[u.grad u + div(v x v)] - mu u
//   dv     = -u.grad v - v.grad u - grad theta + nu Lap v
//   dtheta = -u.grad theta - div v
// div(v x v)_i = d_j(v_j v_i). Quadratic products are dealiased.
// include_stiff=false leaves out the -mu u and nu Lap v parts the
// integrating factor handles exactly.
Tendency rhs_full(Transformer& tr, const TCMState& state, bool include_stiff = true);

// Renormalized tendency; flow and forcing must be evaluated at state.t:
//   dw     = P[-w.grad w - U.grad w - c.grad c - c div c + f
//              - c.grad V - c div V - V.grad c - V div c - w.grad U] - w
//   dc     = -w.grad c - U.grad c + Lap c - grad theta + g
//            - c.grad w - V.grad w - c.grad U - w.grad V
//   dtheta = -w.grad theta - U.grad theta - div c + h
// A LinearRealCache for the same flow skips the linear-part transforms.
Tendency rhs_perturbation(Transformer& tr, const PerturbationState& p, const LinearFlow& flow,
                          const ForcingTriple& forcing, bool include_stiff = true,
                          const LinearRealCache* cache = nullptr);

// Pressure eliminated by the projection: solves -Lap p = div(u.grad u +
// div(v x v)) mode-wise with zero mean, so that P[N] + grad p = N.
SpectralField compute_pressure(Transformer& tr, const TCMState& state);

// u = U + w, v = V + c (and its inverse).
TCMState recompose(const PerturbationState& p, const LinearFlow& flow, double mu = 1.0, double nu = 1.0);
PerturbationState decompose(const TCMState& state, const LinearFlow& flow);

// mu ||u||_L2^2 + nu ||grad v||_L2^2, the exact L2 energy dissipation rate.
double dissipation_rate(const VectorField& u, const VectorField& v, double mu, double nu);

// 1/2 ||(u, v, theta)||_L2^2
double l2_energy(const VectorField& u, const VectorField& v, const SpectralField& theta);

}  // namespace tcm
