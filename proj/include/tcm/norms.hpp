#pragma once

#include <vector>

#include "tcm/fft.hpp"
#include "tcm/field.hpp"

namespace tcm {

// Norm conventions, derivative-sum style throughout:
//   ||f||_{H^s}^2   = sum_{|alpha| <= s} ||D^alpha f||_{L^2}^2
//                   = S^2 sum_k m_s(xi_k) |c_k|^2,
//   m_s(xi)         = sum_{|alpha| <= s} xi_1^{2 a1} xi_2^{2 a2},
//   ||f1,...,fn||_X = ||f1||_X + ... + ||fn||_X,
//   ||f||_{W^{s,inf}} = sum_{i <= s} || |grad^i f| ||_{L^inf}  (grid max of
//   the Euclidean magnitude of the full i-th derivative tensor).

double hs_norm(const SpectralField& f, int s);
// Top-order homogeneous part only: sum_{|alpha| = s} ||D^alpha f||^2.
double hdot_norm(const SpectralField& f, int s);
// Sum of the component norms (comma-list convention).
double multinorm(const std::vector<const SpectralField*>& fields, int s);
// H^s norm of a 2-vector field, sqrt(||vx||^2 + ||vy||^2).
double hs_norm(const VectorField& v, int s);

// sum_k |c_k|, the series analog of ||fhat||_{L^1}; bounds ||f||_{L^inf}.
double spectral_l1(const SpectralField& f);

// Grid max of |f| (lower bound for the true sup; spectral_l1 is the upper).
double linf_norm(Transformer& tr, const SpectralField& f);
double winf_norm(Transformer& tr, const SpectralField& f, int s);
// Vector-field version: the i-th derivative tensor runs over both components.
double winf_norm(Transformer& tr, const VectorField& v, int s);

// The paper's energy functionals for the perturbation (w, c, theta) with
// forcing (f, g, h):
//   A = ||(w,c,theta)||_{H^3}^2        (sum of squared component norms)
//   B = ||(w, grad c)||_{H^3}^2 + ||grad theta||_{H^2}^2
//   E = ||f1,f2,g1,g2,h||_{H^3}        (comma-list, not squared)
//   crossing = sum_{|l| <= 2} <D^l c, D^l grad theta>
struct EnergyFunctionals {
    double A = 0.0;
    double B = 0.0;
    double E = 0.0;
    double A0 = 0.0;
    double crossing = 0.0;
};

EnergyFunctionals functionals(const VectorField& w, const VectorField& c, const SpectralField& theta,
                              const VectorField& f, const VectorField& g, const SpectralField& h);

double crossing_term(const VectorField& c, const SpectralField& theta);

// [D^alpha, vec.]grad g = D^alpha(vec . grad g) - vec . grad(D^alpha g),
// products dealiased. Requires 0 < |alpha| <= 3.
SpectralField commutator_bracket(Transformer& tr, const VectorField& vec, const SpectralField& g,
                                 int a1, int a2);

}  // namespace tcm
