#include "tcm/norms.hpp"

#include <cmath>

#include "tcm/kernels.hpp"
#include "tcm/spectral_ops.hpp"

namespace tcm {

namespace {

// m_s(xi) over the lattice, or its top-order part only.
std::vector<double> sobolev_multiplier(const Grid& g, int s, bool top_only) {
    std::vector<double> m(g.size(), 0.0);
    const int n = g.n();
    // power tables per axis: pw[a][j] = xi_j^{2a}
    std::vector<std::vector<double>> pw(static_cast<std::size_t>(s) + 1,
                                        std::vector<double>(static_cast<std::size_t>(n), 1.0));
    for (int a = 1; a <= s; ++a)
        for (int j = 0; j < n; ++j) {
            const double x2 = g.xi(j) * g.xi(j);
            pw[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] =
                pw[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(j)] * x2;
        }
#pragma omp parallel for schedule(static) if (n >= 1024)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int a1 = 0; a1 <= s; ++a1) {
                const double p1 = pw[static_cast<std::size_t>(a1)][static_cast<std::size_t>(i)];
                for (int a2 = 0; a1 + a2 <= s; ++a2) {
                    if (top_only && a1 + a2 != s) continue;
                    acc += p1 * pw[static_cast<std::size_t>(a2)][static_cast<std::size_t>(j)];
                }
            }
            m[g.idx(i, j)] = acc;
        }
    }
    return m;
}

long binomial(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double nan_guard(double v, const char* where) {
    if (!std::isfinite(v)) throw NonFinite(where);
    return v;
}

}  // namespace

double hs_norm(const SpectralField& f, int s) {
    const auto m = sobolev_multiplier(f.grid, s, false);
    const double S2 = f.grid.side() * f.grid.side();
    return std::sqrt(S2 * kernels::weighted_abs2_sum(f.coeffs, m));
}

double hdot_norm(const SpectralField& f, int s) {
    const auto m = sobolev_multiplier(f.grid, s, true);
    const double S2 = f.grid.side() * f.grid.side();
    return std::sqrt(S2 * kernels::weighted_abs2_sum(f.coeffs, m));
}

double multinorm(const std::vector<const SpectralField*>& fields, int s) {
    if (fields.empty()) throw ShapeMismatch("multinorm: empty field list");
    for (const auto* f : fields) require_same_grid(f->grid, fields[0]->grid, "multinorm");
    double sum = 0.0;
    for (const auto* f : fields) sum += hs_norm(*f, s);
    return sum;
}

double hs_norm(const VectorField& v, int s) {
    const double nx = hs_norm(v.x, s), ny = hs_norm(v.y, s);
    return std::sqrt(nx * nx + ny * ny);
}

double spectral_l1(const SpectralField& f) {
    return kernels::sum_abs(f.coeffs);
}

double linf_norm(Transformer& tr, const SpectralField& f) {
    const RealField r = tr.inverse(f);
    return kernels::max_abs(r.values);
}

namespace {

// max over the grid of |grad^i f|, all 2^i derivative slots, as the
// Euclidean magnitude of the (i+1) distinct entries with binomial weight.
double grad_tensor_max(Transformer& tr, const std::vector<const SpectralField*>& comps, int i) {
    std::vector<RealField> reals;
    std::vector<double> weights;
    for (const auto* f : comps) {
        for (int a1 = 0; a1 <= i; ++a1) {
            reals.push_back(tr.inverse(derivative(*f, a1, i - a1)));
            weights.push_back(static_cast<double>(binomial(i, a1)));
        }
    }
    std::vector<std::span<const double>> spans;
    spans.reserve(reals.size());
    for (const auto& r : reals) spans.emplace_back(r.values);
    return kernels::max_weighted_magnitude(spans, weights);
}

}  // namespace

double winf_norm(Transformer& tr, const SpectralField& f, int s) {
    double sum = 0.0;
    for (int i = 0; i <= s; ++i) sum += grad_tensor_max(tr, {&f}, i);
    return sum;
}

double winf_norm(Transformer& tr, const VectorField& v, int s) {
    double sum = 0.0;
    for (int i = 0; i <= s; ++i) sum += grad_tensor_max(tr, {&v.x, &v.y}, i);
    return sum;
}

double crossing_term(const VectorField& c, const SpectralField& theta) {
    require_same_grid(c.grid(), theta.grid, "crossing_term");
    // <D^l c, D^l grad theta> summed over |l| <= 2; in coefficient space the
    // D^l pair contributes the weight m_2(xi).
    const Grid& g = theta.grid;
    const auto m2 = sobolev_multiplier(g, 2, false);
    const SpectralField t1 = derivative(theta, 1, 0);
    const SpectralField t2 = derivative(theta, 0, 1);
    const double S2 = g.side() * g.side();
    return S2 * (kernels::weighted_dot(c.x.coeffs, t1.coeffs, m2) +
                 kernels::weighted_dot(c.y.coeffs, t2.coeffs, m2));
}

EnergyFunctionals functionals(const VectorField& w, const VectorField& c, const SpectralField& theta,
                              const VectorField& f, const VectorField& g, const SpectralField& h) {
    EnergyFunctionals out;
    {
        const double nw = hs_norm(w, 3), nc = hs_norm(c, 3), nt = hs_norm(theta, 3);
        out.A = nw * nw + nc * nc + nt * nt;
    }
    {
        double b = hs_norm(w, 3);
        b = b * b;
        for (const SpectralField* comp : {&c.x, &c.y}) {
            for (int d = 0; d < 2; ++d) {
                const double nd = hs_norm(derivative(*comp, d == 0 ? 1 : 0, d == 0 ? 0 : 1), 3);
                b += nd * nd;
            }
        }
        const double g1 = hs_norm(derivative(theta, 1, 0), 2);
        const double g2 = hs_norm(derivative(theta, 0, 1), 2);
        out.B = b + g1 * g1 + g2 * g2;
    }
    out.E = multinorm({&f.x, &f.y, &g.x, &g.y, &h}, 3);
    out.crossing = crossing_term(c, theta);
    nan_guard(out.A + out.B + out.E + out.crossing, "functionals");
    return out;
}

SpectralField commutator_bracket(Transformer& tr, const VectorField& vec, const SpectralField& g,
                                 int a1, int a2) {
    const int order = a1 + a2;
    if (order <= 0 || order > 3) throw InvalidOrder("commutator_bracket needs 0 < |alpha| <= 3");
    require_same_grid(vec.grid(), g.grid, "commutator_bracket");
    // D^alpha(vec . grad g) - vec . grad(D^alpha g)
    const SpectralField gx = derivative(g, 1, 0);
    const SpectralField gy = derivative(g, 0, 1);
    SpectralField adv = dealiased_product(tr, vec.x, gx) + dealiased_product(tr, vec.y, gy);
    const SpectralField dg = derivative(g, a1, a2);
    const SpectralField dgx = derivative(dg, 1, 0);
    const SpectralField dgy = derivative(dg, 0, 1);
    const SpectralField adv_high = dealiased_product(tr, vec.x, dgx) + dealiased_product(tr, vec.y, dgy);
    return derivative(adv, a1, a2) - adv_high;
}

}  // namespace tcm
