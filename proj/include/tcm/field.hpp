#pragma once

#include <complex>
#include <span>
#include <vector>

#include "tcm/grid.hpp"

namespace tcm {

using cplx = std::complex<double>;

// Scalar field on the collocation grid x_j = j*S/n.
struct RealField {
    Grid grid;
    std::vector<double> values;

    RealField() = default;
    explicit RealField(const Grid& g) : grid(g), values(g.size(), 0.0) {}

    double& at(int i, int j) { return values[grid.idx(i, j)]; }
    double at(int i, int j) const { return values[grid.idx(i, j)]; }
};

// Scalar field in coefficient space, convention f(x) = sum_k c_k e^{i xi_k . x}.
// A real-valued f has Hermitian symmetry c_{-k} = conj(c_k).
struct SpectralField {
    Grid grid;
    std::vector<cplx> coeffs;

    SpectralField() = default;
    explicit SpectralField(const Grid& g) : grid(g), coeffs(g.size(), cplx{0.0, 0.0}) {}

    cplx& at(int i, int j) { return coeffs[grid.idx(i, j)]; }
    cplx at(int i, int j) const { return coeffs[grid.idx(i, j)]; }
};

// Two spectral components on one grid.
struct VectorField {
    SpectralField x;
    SpectralField y;

    VectorField() = default;
    explicit VectorField(const Grid& g) : x(g), y(g) {}
    VectorField(SpectralField cx, SpectralField cy) : x(std::move(cx)), y(std::move(cy)) {
        if (!(x.grid == y.grid)) throw GridMismatch("vector field components on different grids");
    }

    const Grid& grid() const { return x.grid; }
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (!(a == b)) throw GridMismatch(where);
}

}  // namespace tcm
