#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tcm/fft.hpp"
#include "tcm/initial_data.hpp"
#include "tcm/norms.hpp"

using namespace tcm;
constexpr double pi = std::numbers::pi;

TEST_CASE("ConeSpec membership and bounds") {
    const ConeSpec cone(0.3);
    CHECK(cone.contains(1.0, -1.0));           // |xi| = sqrt(2), on the diagonal
    CHECK(cone.inner_contains(1.0, -1.0));     // 4/3 <= sqrt(2) <= 5/3
    CHECK_FALSE(cone.contains(1.0, 0.0));      // strip violated
    CHECK_FALSE(cone.contains(0.3, -0.3));     // |xi| < 1
    CHECK_FALSE(cone.contains(1.77, -1.77));   // |xi| > 2
    CHECK_THROWS_AS(ConeSpec(0.4), EpsilonTooLarge);  // >= 1/e
    CHECK_THROWS_AS(ConeSpec(-0.1), ValidationError);
}

TEST_CASE("smooth_step is a C-inf 0-1 transition") {
    CHECK(smooth_step(-1.0) == 0.0);
    CHECK(smooth_step(0.0) == 0.0);
    CHECK(smooth_step(1.0) == 1.0);
    CHECK(smooth_step(2.0) == 1.0);
    CHECK(smooth_step(0.5) == doctest::Approx(0.5));
    CHECK(smooth_step(0.2) > 0.0);
    CHECK(smooth_step(0.2) < smooth_step(0.8));
}

TEST_CASE("bump chi") {
    const Grid g = make_grid(64, 16.0 * pi);  // xi spacing 0.125
    const ConeSpec cone(0.3);
    const SpectralField chi = build_bump_chi(cone, g);

    SUBCASE("exactly 1 on inner-cone lattice points, in [0,1], 0 outside") {
        int plateau = 0, interior = 0;
        for (int i = 0; i < g.n(); ++i) {
            for (int j = 0; j < g.n(); ++j) {
                const double v = chi.at(i, j).real();
                CHECK(chi.at(i, j).imag() == 0.0);
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
                if (cone.inner_contains(g.xi(i), g.xi(j))) {
                    CHECK(v == 1.0);
                    ++plateau;
                } else if (!cone.contains(g.xi(i), g.xi(j))) {
                    CHECK(v == 0.0);
                } else if (v > 0.0 && v < 1.0) {
                    ++interior;
                }
            }
        }
        CHECK(plateau > 0);
        CHECK(interior > 0);  // the transition region is actually exercised
        // the specific plateau point (1, -1): diagonal, |xi| = 1.414 in [4/3, 5/3]
        CHECK(chi.at(8, 64 - 8) == cplx{1.0, 0.0});
    }

    SUBCASE("even spectrum: the bump is a real field") {
        CHECK(hermitian_defect(chi) == 0.0);
    }

    SUBCASE("support check passes by construction") { CHECK(verify_support(chi, cone)); }

    SUBCASE("unresolved lattice is rejected") {
        const Grid coarse = make_grid(16, 2.0 * pi);  // spacing 1 > eps/2
        CHECK_THROWS_AS(build_bump_chi(cone, coarse), UnresolvedCone);
    }
}

TEST_CASE("remark amplitude arithmetic") {
    const Grid g = make_grid(256, 80.0 * pi);
    const ConeSpec cone(0.05);
    const LinearData data = build_remark_data(cone, g);
    // (1/eps) sqrt(log log (1/eps)) at eps = 0.05: 20 sqrt(log 2.9957) ~ 20.95
    const double amp = 20.0 * std::sqrt(std::log(std::log(20.0)));
    CHECK(amp == doctest::Approx(20.9494).epsilon(1e-4));
    // the plateau carries exactly that amplitude
    double peak = 0.0;
    for (const auto& c : data.a0.coeffs) peak = std::max(peak, std::abs(c));
    CHECK(peak == doctest::Approx(amp).epsilon(1e-12));
    CHECK(verify_support(data.a0, cone));
    CHECK(verify_support(data.m0, cone));
}

TEST_CASE("Remark 1.1 norm asymptotics on a fixed grid") {
    // One lattice resolving the smallest epsilon; data only, no products.
    const Grid g = make_grid(256, 160.0 * pi);
    std::vector<double> l1_ratio, l2_ratio, v0_linf;
    Transformer tr(g);
    for (double eps : {0.1, 0.05, 0.025}) {
        const ConeSpec cone(eps);
        const LinearData data = build_remark_data(cone, g);
        const double ll = std::log(std::log(1.0 / eps));
        l1_ratio.push_back(spectral_l1(data.a0) / std::sqrt(ll));
        l2_ratio.push_back(hs_norm(data.a0, 0) * std::sqrt(eps) / std::sqrt(ll));
        v0_linf.push_back(linf_norm(tr, data.m0));
    }
    // factor-2 bands across the sweep
    for (const auto& arr : {l1_ratio, l2_ratio}) {
        const double lo = *std::min_element(arr.begin(), arr.end());
        const double hi = *std::max_element(arr.begin(), arr.end());
        CHECK(hi / lo < 2.0);
    }
    // ||v0||_inf nondecreasing as eps decreases
    CHECK(v0_linf[1] >= v0_linf[0]);
    CHECK(v0_linf[2] >= v0_linf[1]);
}

TEST_CASE("spectral_l1 of the bump: frozen regression baseline") {
    // direct coefficient-sum on the 128^2, side 40*pi lattice at eps = 0.1
    const Grid g = make_grid(128, 40.0 * pi);
    const SpectralField chi = build_bump_chi(ConeSpec(0.1), g);
    double direct = 0.0;
    for (const auto& c : chi.coeffs) direct += std::abs(c);
    CHECK(spectral_l1(chi) == doctest::Approx(direct).epsilon(1e-13));
    CHECK(spectral_l1(chi) == doctest::Approx(56.5822992050168).epsilon(1e-10));
}

TEST_CASE("strip-direction mass proxy: l1 of d2 a0 vs l1 of a0") {
    // On the cone the second wavenumber component is bounded below, so the
    // derivative keeps at least 2/3 of the coefficient mass.
    const Grid g = make_grid(128, 40.0 * pi);
    for (double eps : {0.2, 0.1}) {
        const LinearData data = build_remark_data(ConeSpec(eps), g);
        const SpectralField d2a = derivative(data.a0, 0, 1);
        CHECK(spectral_l1(d2a) >= (2.0 / 3.0) * spectral_l1(data.a0));
    }
}

TEST_CASE("assemble_initial") {
    const Grid g = make_grid(32, 2.0 * pi);
    Transformer tr(g);
    // hand-built diagonal seed a0 = m0 = cos(x1 - x2)
    const SpectralField a0 =
        tr.forward(oracles::fill(g, [](double x, double y) { return std::cos(x - y); }));
    const ConeSpec cone(0.3);
    LinearData data{a0, a0, cone};

    SUBCASE("U0 = (sin, sin), V0 = (cos, cos) for the diagonal mode") {
        InitialCondition ic = assemble_initial(data, VectorField(g), VectorField(g), SpectralField(g));
        const RealField u1 = tr.inverse(ic.U0().x);
        const RealField u2 = tr.inverse(ic.U0().y);
        const RealField expect =
            oracles::fill(g, [](double x, double y) { return std::sin(x - y); });
        for (std::size_t i = 0; i < u1.values.size(); ++i) {
            CHECK(u1.values[i] == doctest::Approx(expect.values[i]).epsilon(1e-12));
            CHECK(u2.values[i] == doctest::Approx(expect.values[i]).epsilon(1e-12));
        }
        const RealField v1 = tr.inverse(ic.V0().x);
        for (int i = 0; i < g.n(); ++i)
            for (int j = 0; j < g.n(); ++j)
                CHECK(v1.at(i, j) == doctest::Approx(std::cos(g.x(i) - g.x(j))).epsilon(1e-12));
    }

    SUBCASE("zero perturbation: u0 = U0 and A0-type norms vanish") {
        InitialCondition ic = assemble_initial(data, VectorField(g), VectorField(g), SpectralField(g));
        CHECK(l2_norm(ic.u0() - ic.U0()) == 0.0);
        CHECK(hs_norm(ic.w0, 3) == 0.0);
        // U0 is divergence-free as a per-mode identity
        const SpectralField div = divergence(ic.U0());
        for (const auto& c : div.coeffs) CHECK(std::abs(c) <= 1e-14);
    }

    SUBCASE("non-solenoidal w0 is rejected") {
        VectorField bad(g);
        bad.x = tr.forward(oracles::fill(g, [](double x, double) { return std::cos(x); }));
        CHECK_THROWS_AS(assemble_initial(data, bad, VectorField(g), SpectralField(g)),
                        NotDivergenceFree);
    }
}

TEST_CASE("verify_support") {
    const Grid g = make_grid(16, 2.0 * pi);
    Transformer tr(g);
    const ConeSpec cone(0.1);
    SUBCASE("cos(x1) has support outside the strip") {
        const SpectralField f =
            tr.forward(oracles::fill(g, [](double x, double) { return std::cos(x); }));
        CHECK_FALSE(verify_support(f, cone));
    }
    SUBCASE("zero field has empty support") { CHECK(verify_support(SpectralField(g), cone)); }
    SUBCASE("diagonal mode is inside") {
        SpectralField f(g);
        f.at(1, 16 - 1) = cplx{0.5, 0.0};
        f.at(16 - 1, 1) = cplx{0.5, 0.0};
        CHECK(verify_support(f, cone));
    }
}

TEST_CASE("condition_lhs") {
    const Grid g = make_grid(64, 16.0 * pi);
    const ConeSpec cone(0.3);

    SUBCASE("all-zero data evaluates to zero") {
        SpectralField z(g);
        LinearData data{z, z, cone};
        InitialCondition ic =
            assemble_initial(data, VectorField(g), VectorField(g), SpectralField(g));
        CHECK(condition_lhs(ic, 1.0) == 0.0);
    }

    SUBCASE("doubling C strictly increases the value for nonzero data") {
        const LinearData data = build_cone_data(cone, g, 0.01);
        InitialCondition ic =
            assemble_initial(data, VectorField(g), VectorField(g), SpectralField(g));
        const double v1 = condition_lhs(ic, 1.0);
        const double v2 = condition_lhs(ic, 2.0);
        CHECK(v2 > v1);
        CHECK(v1 > 0.0);
        // monotone in the data amplitude as well
        const LinearData bigger = build_cone_data(cone, g, 0.02);
        InitialCondition ic2 =
            assemble_initial(bigger, VectorField(g), VectorField(g), SpectralField(g));
        CHECK(condition_lhs(ic2, 1.0) > v1);
    }

    SUBCASE("log-space value tracks the loglog exponent across the sweep") {
        // For the remark data the exponent is dominated by C l1^2 with
        // l1 ~ sqrt(log log 1/eps): log_lhs / loglog stays in a tight band.
        const Grid fine = make_grid(256, 160.0 * pi);
        std::vector<double> ratio;
        for (double eps : {0.1, 0.05, 0.025}) {
            const LinearData data = build_remark_data(ConeSpec(eps), fine);
            InitialCondition ic = assemble_initial(data, VectorField(fine), VectorField(fine),
                                                   SpectralField(fine));
            ratio.push_back(log_condition_lhs(ic, 1.0) / std::log(std::log(1.0 / eps)));
        }
        const double lo = *std::min_element(ratio.begin(), ratio.end());
        const double hi = *std::max_element(ratio.begin(), ratio.end());
        CHECK(hi / lo < 2.0);
    }
}
