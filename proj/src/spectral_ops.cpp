#include "tcm/spectral_ops.hpp"

#include <cmath>

#include "tcm/kernels.hpp"

namespace tcm {

namespace {

cplx ipow(int p) {
    // i^p for p >= 0
    switch (p & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

double small_pow(double x, int a) {
    double r = 1.0;
    for (int i = 0; i < a; ++i) r *= x;
    return r;
}

}  // namespace

SpectralField derivative(const SpectralField& f, int a1, int a2) {
    const Grid& g = f.grid;
    SpectralField out(g);
    const int n = g.n();
    const cplx phase = ipow(a1 + a2);
    // per-axis power tables keep the inner loop multiply-only
    std::vector<double> p2(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) p2[static_cast<std::size_t>(j)] = small_pow(g.xi(j), a2);
#pragma omp parallel for schedule(static) if (n >= 1024)
    for (int i = 0; i < n; ++i) {
        if (g.is_nyquist(i)) continue;
        const double p1 = small_pow(g.xi(i), a1);
        for (int j = 0; j < n; ++j) {
            if (g.is_nyquist(j)) continue;
            out.coeffs[g.idx(i, j)] = f.coeffs[g.idx(i, j)] * phase * (p1 * p2[static_cast<std::size_t>(j)]);
        }
    }
    return out;
}

SpectralField diagonal_derivative(const SpectralField& f) {
    const Grid& g = f.grid;
    SpectralField out(g);
    const int n = g.n();
#pragma omp parallel for schedule(static) if (n >= 1024)
    for (int i = 0; i < n; ++i) {
        if (g.is_nyquist(i)) continue;
        const double x1 = g.xi(i);
        for (int j = 0; j < n; ++j) {
            if (g.is_nyquist(j)) continue;
            out.coeffs[g.idx(i, j)] = f.coeffs[g.idx(i, j)] * cplx{0.0, x1 + g.xi(j)};
        }
    }
    return out;
}

void dealias_in_place(SpectralField& f) {
    const Grid& g = f.grid;
    const int n = g.n();
    const double cut = n / 3.0;
#pragma omp parallel for schedule(static) if (n >= 1024)
    for (int i = 0; i < n; ++i) {
        const bool kill_i = std::abs(g.k_index(i)) > cut;
        for (int j = 0; j < n; ++j) {
            if (kill_i || std::abs(g.k_index(j)) > cut) f.coeffs[g.idx(i, j)] = cplx{0.0, 0.0};
        }
    }
}

SpectralField dealias(const SpectralField& f) {
    SpectralField out = f;
    dealias_in_place(out);
    return out;
}

VectorField leray_project(const VectorField& v) {
    const Grid& g = v.grid();
    VectorField out(g);
    const int n = g.n();
#pragma omp parallel for schedule(static) if (n >= 1024)
    for (int i = 0; i < n; ++i) {
        const double x1 = g.xi(i);
        for (int j = 0; j < n; ++j) {
            const double x2 = g.xi(j);
            const double q = x1 * x1 + x2 * x2;
            const std::size_t k = g.idx(i, j);
            const cplx vx = v.x.coeffs[k], vy = v.y.coeffs[k];
            if (q == 0.0) {
                out.x.coeffs[k] = vx;
                out.y.coeffs[k] = vy;
            } else {
                const cplx dot = (x1 * vx + x2 * vy) / q;
                out.x.coeffs[k] = vx - x1 * dot;
                out.y.coeffs[k] = vy - x2 * dot;
            }
        }
    }
    return out;
}

SpectralField divergence(const VectorField& v) {
    const Grid& g = v.grid();
    SpectralField out(g);
    const int n = g.n();
#pragma omp parallel for schedule(static) if (n >= 1024)
    for (int i = 0; i < n; ++i) {
        if (g.is_nyquist(i)) continue;
        const double x1 = g.xi(i);
        for (int j = 0; j < n; ++j) {
            if (g.is_nyquist(j)) continue;
            const std::size_t k = g.idx(i, j);
            out.coeffs[k] = cplx{0.0, x1} * v.x.coeffs[k] + cplx{0.0, g.xi(j)} * v.y.coeffs[k];
        }
    }
    return out;
}

VectorField perp_gradient(const SpectralField& a) {
    return VectorField(derivative(a, 0, 1), -1.0 * derivative(a, 1, 0));
}

double l2_norm(const SpectralField& f) {
    const double S2 = f.grid.side() * f.grid.side();
    double s = 0.0;
    for (const cplx& c : f.coeffs) s += std::norm(c);
    return std::sqrt(S2 * s);
}

double l2_inner(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a.grid, b.grid, "l2_inner");
    const double S2 = a.grid.side() * a.grid.side();
    double s = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        s += a.coeffs[i].real() * b.coeffs[i].real() + a.coeffs[i].imag() * b.coeffs[i].imag();
    return S2 * s;
}

double l2_norm(const VectorField& v) {
    const double nx = l2_norm(v.x), ny = l2_norm(v.y);
    return std::sqrt(nx * nx + ny * ny);
}

double relative_divergence(const VectorField& v) {
    const double nv = l2_norm(v);
    if (nv == 0.0) return 0.0;
    return l2_norm(divergence(v)) / nv;
}

double hermitian_defect(const SpectralField& f) {
    const Grid& g = f.grid;
    const int n = g.n();
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const int mi = (n - i) % n;
        for (int j = 0; j < n; ++j) {
            const int mj = (n - j) % n;
            worst = std::max(worst, std::abs(f.coeffs[g.idx(mi, mj)] - std::conj(f.coeffs[g.idx(i, j)])));
        }
    }
    return worst;
}

bool has_nonfinite(const SpectralField& f) {
    for (const cplx& c : f.coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return true;
    return false;
}

SpectralField dealiased_product(Transformer& tr, const SpectralField& a, const SpectralField& b) {
    require_same_grid(a.grid, b.grid, "dealiased_product");
    RealField ra(a.grid), rb(a.grid);
    tr.inverse_pair(a, b, ra, rb);
    kernels::multiply(ra.values, rb.values, ra.values);
    SpectralField out = tr.forward(ra);
    dealias_in_place(out);
    return out;
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a.grid, b.grid, "field +");
    SpectralField out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
    return out;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a.grid, b.grid, "field -");
    SpectralField out = a;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
    return out;
}

SpectralField operator*(double s, const SpectralField& f) {
    SpectralField out = f;
    for (auto& c : out.coeffs) c *= s;
    return out;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    return VectorField(a.x + b.x, a.y + b.y);
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    return VectorField(a.x - b.x, a.y - b.y);
}

VectorField operator*(double s, const VectorField& v) {
    return VectorField(s * v.x, s * v.y);
}

}  // namespace tcm
