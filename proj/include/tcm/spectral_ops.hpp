#pragma once

#include "tcm/fft.hpp"
#include "tcm/field.hpp"

namespace tcm {

// Multiplier-space operators. All of them zero the Nyquist rows and keep
// Hermitian symmetry, so real fields stay real.

// D^alpha with alpha = (a1, a2): coefficients times (i xi_1)^a1 (i xi_2)^a2.
SpectralField derivative(const SpectralField& f, int a1, int a2);

// (d_1 + d_2) f, the near-diagonal annihilator.
SpectralField diagonal_derivative(const SpectralField& f);

// 2/3-rule: zero every mode with max(|k1|,|k2|) > n/3. Idempotent.
SpectralField dealias(const SpectralField& f);
void dealias_in_place(SpectralField& f);

// Mode-wise projection onto divergence-free fields, I - xi xi^T/|xi|^2;
// the k = 0 mode passes through unchanged.
VectorField leray_project(const VectorField& v);

SpectralField divergence(const VectorField& v);

// (d_2 a, -d_1 a), divergence-free by construction.
VectorField perp_gradient(const SpectralField& a);

// L2 norm S^2 sum |c_k|^2 under the series convention, and the L2 pairing
// S^2 Re sum a_k conj(b_k) (equals the integral of a*b for real fields).
double l2_norm(const SpectralField& f);
double l2_inner(const SpectralField& a, const SpectralField& b);
double l2_norm(const VectorField& v);

// ||div v||_L2 / ||v||_L2, 0 for the zero field.
double relative_divergence(const VectorField& v);

// max_k |c_{-k} - conj(c_k)|; 0 for fields representing real functions.
double hermitian_defect(const SpectralField& f);

bool has_nonfinite(const SpectralField& f);

// Pointwise product of two spectral fields through the grid, dealiased.
SpectralField dealiased_product(Transformer& tr, const SpectralField& a, const SpectralField& b);

// Field arithmetic used all over the dynamics.
SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& f);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& v);

}  // namespace tcm
