#include "tcm/initial_data.hpp"

#include <cmath>
#include <limits>

#include "tcm/norms.hpp"

namespace tcm {

ConeSpec::ConeSpec(double epsilon) : eps_(epsilon) {
    if (!(epsilon > 0.0))
        throw ValidationError("epsilon", "must be positive");
    if (epsilon >= std::exp(-1.0))
        throw EpsilonTooLarge("epsilon must be < 1/e so log log(1/eps) > 0, got " +
                              std::to_string(epsilon));
}

bool ConeSpec::contains(double xi1, double xi2) const {
    const double r = std::hypot(xi1, xi2);
    return std::abs(xi1 + xi2) <= eps_ && r >= ring_lo && r <= ring_hi;
}

bool ConeSpec::inner_contains(double xi1, double xi2) const {
    const double r = std::hypot(xi1, xi2);
    return std::abs(xi1 + xi2) <= eps_ / 2.0 && r >= inner_ring_lo && r <= inner_ring_hi;
}

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

namespace {

// 1 on the plateau, smooth drop to 0 at the outer boundary.
double strip_profile(double s, double eps) {
    const double a = std::abs(s);
    if (a <= eps / 2.0) return 1.0;
    if (a >= eps) return 0.0;
    return smooth_step((eps - a) / (eps / 2.0));
}

double ring_profile(double r) {
    if (r < ConeSpec::ring_lo || r > ConeSpec::ring_hi) return 0.0;
    if (r < ConeSpec::inner_ring_lo)
        return smooth_step((r - ConeSpec::ring_lo) / (ConeSpec::inner_ring_lo - ConeSpec::ring_lo));
    if (r > ConeSpec::inner_ring_hi)
        return smooth_step((ConeSpec::ring_hi - r) / (ConeSpec::ring_hi - ConeSpec::inner_ring_hi));
    return 1.0;
}

}  // namespace

SpectralField build_bump_chi(const ConeSpec& cone, const Grid& grid) {
    if (!cone.resolvable_on(grid))
        throw UnresolvedCone("lattice spacing " + std::to_string(grid.xi_spacing()) +
                             " exceeds eps/2 = " + std::to_string(cone.epsilon() / 2.0));
    SpectralField chi(grid);
    const int n = grid.n();
    for (int i = 0; i < n; ++i) {
        if (grid.is_nyquist(i)) continue;
        const double x1 = grid.xi(i);
        for (int j = 0; j < n; ++j) {
            if (grid.is_nyquist(j)) continue;
            const double x2 = grid.xi(j);
            const double v = strip_profile(x1 + x2, cone.epsilon()) * ring_profile(std::hypot(x1, x2));
            if (v != 0.0) chi.coeffs[grid.idx(i, j)] = cplx{v, 0.0};
        }
    }
    return chi;
}

LinearData build_remark_data(const ConeSpec& cone, const Grid& grid) {
    const double eps = cone.epsilon();
    // ConeSpec already guarantees eps < 1/e.
    const double amplitude = (1.0 / eps) * std::sqrt(std::log(std::log(1.0 / eps)));
    return build_cone_data(cone, grid, amplitude);
}

LinearData build_cone_data(const ConeSpec& cone, const Grid& grid, double amplitude) {
    SpectralField chi = build_bump_chi(cone, grid);
    SpectralField a0 = amplitude * chi;
    SpectralField m0 = a0;
    return LinearData{std::move(a0), std::move(m0), cone};
}

bool verify_support(const SpectralField& f, const ConeSpec& cone) {
    const Grid& g = f.grid;
    const int n = g.n();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const cplx c = f.coeffs[g.idx(i, j)];
            if (c.real() == 0.0 && c.imag() == 0.0) continue;
            if (!cone.contains(g.xi(i), g.xi(j))) return false;
        }
    }
    return true;
}

InitialCondition assemble_initial(LinearData linear, VectorField w0, VectorField c0,
                                  SpectralField theta0) {
    require_same_grid(linear.grid(), w0.grid(), "assemble_initial(w0)");
    require_same_grid(linear.grid(), c0.grid(), "assemble_initial(c0)");
    require_same_grid(linear.grid(), theta0.grid, "assemble_initial(theta0)");
    const double rd = relative_divergence(w0);
    if (rd > 1e-10)
        throw NotDivergenceFree("w0 relative divergence " + std::to_string(rd));
    return InitialCondition{std::move(linear), std::move(w0), std::move(c0), std::move(theta0)};
}

double log_condition_lhs(const InitialCondition& ic, double C) {
    if (!(C > 0.0)) throw ValidationError("C", "must be positive");
    const double a_l2 = hs_norm(ic.linear.a0, 0);
    const double m_l2 = hs_norm(ic.linear.m0, 0);
    const double a_l1 = spectral_l1(ic.linear.a0);
    const double m_l1 = spectral_l1(ic.linear.m0);
    const double nw = hs_norm(ic.w0, 3), nc = hs_norm(ic.c0, 3), nt = hs_norm(ic.theta0, 3);
    const double A0 = nw * nw + nc * nc + nt * nt;
    const double Q = a_l2 * a_l1 + m_l2 * (1.0 + m_l1);
    const double L = a_l1 + m_l1;
    const double eps = ic.linear.cone.epsilon();
    const double base = A0 + eps * Q;
    const double expo = C * eps * Q + C * (L + L * L);
    if (base == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(base) + expo;
}

double condition_lhs(const InitialCondition& ic, double C) {
    return std::exp(log_condition_lhs(ic, C));
}

}  // namespace tcm
