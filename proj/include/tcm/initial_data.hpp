#pragma once

#include "tcm/field.hpp"
#include "tcm/spectral_ops.hpp"

namespace tcm {

// The Fourier support cone C = { |xi1 + xi2| <= eps, 1 <= |xi| <= 2 } and its
// inner plateau region Ctilde = { |xi1 + xi2| <= eps/2, 4/3 <= |xi| <= 5/3 }.
// Membership on the lattice uses closed inequalities.
class ConeSpec {
  public:
    explicit ConeSpec(double epsilon);

    double epsilon() const { return eps_; }

    bool contains(double xi1, double xi2) const;
    bool inner_contains(double xi1, double xi2) const;

    // Lattice spacing 2*pi/S must be <= eps/2 so the strip holds off-diagonal
    // lattice points. Tiny relative slack so the exact-equality configs
    // survive parse-path rounding.
    bool resolvable_on(const Grid& g) const {
        return g.xi_spacing() <= (eps_ / 2.0) * (1.0 + 1e-12);
    }

    static constexpr double ring_lo = 1.0;
    static constexpr double ring_hi = 2.0;
    static constexpr double inner_ring_lo = 4.0 / 3.0;
    static constexpr double inner_ring_hi = 5.0 / 3.0;

  private:
    double eps_;
};

// Spectra of the linear-flow seeds a0, m0; both vanish identically outside
// the cone and are Hermitian (real-valued fields).
struct LinearData {
    SpectralField a0;
    SpectralField m0;
    ConeSpec cone;

    const Grid& grid() const { return a0.grid; }
};

// Smooth transition h(t) = g(t) / (g(t) + g(1-t)), g(t) = exp(-1/t) for t>0:
// 0 at t <= 0, 1 at t >= 1, C^inf in between.
double smooth_step(double t);

// chi_hat = psi_strip(xi1+xi2) * psi_ring(|xi|): exactly 1 on lattice points
// of Ctilde, exactly 0 outside C, values in [0,1], even under xi -> -xi.
SpectralField build_bump_chi(const ConeSpec& cone, const Grid& grid);

// a0 = m0 = (1/eps) (log log(1/eps))^{1/2} chi. Needs eps < 1/e.
LinearData build_remark_data(const ConeSpec& cone, const Grid& grid);
// Same bump with a caller-chosen amplitude.
LinearData build_cone_data(const ConeSpec& cone, const Grid& grid, double amplitude);

// True iff every nonzero coefficient sits inside the closed cone.
bool verify_support(const SpectralField& f, const ConeSpec& cone);

// Full initial state: linear seeds plus perturbation (w0, c0, theta0).
struct InitialCondition {
    LinearData linear;
    VectorField w0;
    VectorField c0;
    SpectralField theta0;

    // U0 = (d2 a0, -d1 a0), V0 = (m0, m0)
    VectorField U0() const { return perp_gradient(linear.a0); }
    VectorField V0() const { return VectorField(linear.m0, linear.m0); }
    VectorField u0() const { return U0() + w0; }
    VectorField v0() const { return V0() + c0; }
};

// Validates div w0 and assembles the state; relative divergence above 1e-10
// raises NotDivergenceFree.
InitialCondition assemble_initial(LinearData linear, VectorField w0, VectorField c0,
                                  SpectralField theta0);

// Left side of the smallness condition:
//   (A0 + eps*Q) * exp{ C*eps*Q + C*(L + L^2) },
//   Q = ||a0||_L2 ||a0hat||_l1 + ||m0||_L2 (1 + ||m0hat||_l1),
//   L = ||a0hat||_l1 + ||m0hat||_l1.
// log_condition_lhs is the overflow-safe log of the same quantity
// (-inf for all-zero data).
double condition_lhs(const InitialCondition& ic, double C);
double log_condition_lhs(const InitialCondition& ic, double C);

}  // namespace tcm
