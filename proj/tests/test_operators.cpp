#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "vortexlab/field_gen.hpp"
#include "vortexlab/noise.hpp"
#include "vortexlab/norms.hpp"
#include "vortexlab/spectral_ops.hpp"
#include "vortexlab/verify.hpp"

using namespace vlab;
using namespace vlab::test;

TEST_CASE("heat semigroup") {
    GridSpec g(16, 2.0 * M_PI);
    SpectralVectorField F = to_spectral(random_physical(g, 3));

    SUBCASE("t = 0 is the identity") { CHECK(rel_l2_error(heat_semigroup(F, 0.0), F) == 0.0); }

    SUBCASE("negative time rejected") {
        CHECK_THROWS_AS((void)heat_semigroup(F, -0.1), std::domain_error);
    }

    SUBCASE("eigenmode decay: sin(x) e2 at t=1 shrinks by e^{-1}") {
        auto f = make_field(g, [](double x, double, double, int c) {
            return c == 1 ? std::sin(x) : 0.0;
        });
        auto expected = make_field(g, [](double x, double, double, int c) {
            return c == 1 ? 0.36787944117144233 * std::sin(x) : 0.0;
        });
        CHECK(max_pointwise_gap(to_physical(heat_semigroup(to_spectral(f), 1.0)), expected) <
              1e-13);
    }

    SUBCASE("semigroup law") {
        auto a = heat_semigroup(heat_semigroup(F, 0.37), 0.21);
        auto b = heat_semigroup(F, 0.58);
        CHECK(rel_l2_error(a, b) < 1e-12);
    }

    SUBCASE("contraction in every lp norm") {
        for (double p : {1.5, 2.0, 3.0, kInfNorm}) {
            double before = lp_norm(F, p);
            for (double t : {1e-3, 0.1, 1.0})
                CHECK(lp_norm(heat_semigroup(F, t), p) <= before + 1e-8 * before);
        }
    }
}

TEST_CASE("biot-savart") {
    GridSpec g(16, 2.0 * M_PI);

    SUBCASE("U = (0, sin x, 0) maps to (0, 0, cos x)") {
        auto expected = make_field(g, [](double x, double, double, int c) {
            return c == 2 ? std::cos(x) : 0.0;
        });
        auto got = to_physical(biot_savart(single_mode_shear(g)));
        CHECK(max_pointwise_gap(got, expected) < 1e-13);
    }

    SUBCASE("curl(K(U)) = U on divergence-free mean-zero fields") {
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            SpectralVectorField U = random_band_limited(g, seed);
            CHECK(rel_l2_error(curl(biot_savart(U)), U) < 1e-12);
        }
    }

    SUBCASE("zero maps to zero") { CHECK(max_abs(biot_savart(SpectralVectorField(g))) == 0.0); }

    SUBCASE("output is exactly divergence-free") {
        SpectralVectorField U = to_spectral(random_physical(g, 9)); // not even div-free input
        SpectralVectorField X = biot_savart(U);
        auto d = divergence(X);
        double worst = 0.0;
        for (const auto& v : d) worst = std::max(worst, std::abs(v));
        CHECK(worst <= 1e-13 * max_abs(X));
    }
}

TEST_CASE("noise model and convolution") {
    GridSpec g(16, 2.0 * M_PI);

    SUBCASE("unit-mass mollifier fixes constant fields") {
        NoiseModel model(g, {KernelSpec{KernelSpec::Family::mollified_dirac, 0.8, 1.0}}, {7.0});
        auto f = make_field(g, [](double, double, double, int c) { return c == 0 ? 2.5 : -1.0; });
        SpectralVectorField F = to_spectral(f);
        CHECK(rel_l2_error(model.convolve(0, F), F) < 1e-12);
        CHECK(model.channel(0).h_l1 == doctest::Approx(1.0).epsilon(1e-14));
    }

    SUBCASE("zero field maps to zero") {
        NoiseModel model(g, {KernelSpec{}}, {7.0});
        CHECK(max_abs(model.convolve(0, SpectralVectorField(g))) == 0.0);
    }

    SUBCASE("channels commute") {
        NoiseModel model(g,
                         {KernelSpec{KernelSpec::Family::gaussian, 0.25, 1.0},
                          KernelSpec{KernelSpec::Family::mollified_dirac, 0.6, 1.0}},
                         {7.0, -8.0});
        SpectralVectorField F = to_spectral(random_physical(g, 13));
        CHECK(rel_l2_error(model.convolve(0, model.convolve(1, F)),
                           model.convolve(1, model.convolve(0, F))) < 1e-14);
    }

    SUBCASE("channel out of range") {
        NoiseModel model(g, {KernelSpec{}}, {7.0});
        CHECK_THROWS_AS((void)model.convolve(1, SpectralVectorField(g)), std::out_of_range);
    }

    SUBCASE("Young bound at the symbol level and discrete Young inequality") {
        NoiseModel model(g, {KernelSpec{KernelSpec::Family::gaussian, 0.3, 2.0}}, {15.0});
        const auto& ch = model.channel(0);
        for (double s : ch.symbol) CHECK(std::abs(s) <= ch.h_l1 * (1.0 + 1e-12));
        SpectralVectorField F = to_spectral(random_physical(g, 17));
        for (double q : {1.5, 2.0, 3.0})
            CHECK(lp_norm(model.convolve(0, F), q) <= ch.h_l1 * lp_norm(F, q) * (1.0 + 1e-6));
    }

    SUBCASE("admissibility threshold (sqrt(12)+3) |h|_1") {
        NoiseModel ok(g, {KernelSpec{}}, {7.0});
        CHECK(ok.channel(0).admissible);
        CHECK(ok.channel(0).alpha == doctest::Approx(2.0).epsilon(1e-12));
        NoiseModel no(g, {KernelSpec{}}, {6.0}); // 6 < 6.4641...
        CHECK_FALSE(no.channel(0).admissible);
    }
}

namespace {

// independent direct-space oracle for M on Taylor-Green data: closed-form
// vorticity/velocity, derivatives by 4th-order central differences
double tg_u(int j, double x, double y, double z) {
    switch (j) {
        case 0: return -std::cos(x) * std::sin(y) * std::sin(z);
        case 1: return -std::sin(x) * std::cos(y) * std::sin(z);
        default: return 2.0 * std::sin(x) * std::sin(y) * std::cos(z);
    }
}

double tg_x(int j, double x, double y, double z) {
    switch (j) {
        case 0: return std::sin(x) * std::cos(y) * std::cos(z);
        case 1: return -std::cos(x) * std::sin(y) * std::cos(z);
        default: return 0.0;
    }
}

double oracle_m(int j, double x, double y, double z, double h) {
    auto shift = [&](int axis, double d, std::array<double, 3> p) {
        p[static_cast<std::size_t>(axis)] += d;
        return p;
    };
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        auto du = [&](double d) {
            auto p = shift(i, d, {x, y, z});
            return tg_u(j, p[0], p[1], p[2]);
        };
        auto dx = [&](double d) {
            auto p = shift(i, d, {x, y, z});
            return tg_x(j, p[0], p[1], p[2]);
        };
        double du_i = (-du(2.0 * h) + 8.0 * du(h) - 8.0 * du(-h) + du(-2.0 * h)) / (12.0 * h);
        double dx_i = (-dx(2.0 * h) + 8.0 * dx(h) - 8.0 * dx(-h) + dx(-2.0 * h)) / (12.0 * h);
        acc += tg_x(i, x, y, z) * du_i - tg_u(i, x, y, z) * dx_i;
    }
    return -acc;
}

} // namespace

TEST_CASE("vorticity nonlinearity M") {
    GridSpec g(16, 2.0 * M_PI);

    SUBCASE("M(0) = 0") { CHECK(max_abs(nonlinearity(SpectralVectorField(g))) == 0.0); }

    SUBCASE("M of a constant field vanishes") {
        auto f = make_field(g, [](double, double, double, int c) { return c == 0 ? 1.5 : 0.25; });
        CHECK(max_abs(nonlinearity(to_spectral(f))) < 1e-13);
    }

    SUBCASE("quadratic homogeneity M(cU) = c^2 M(U)") {
        SpectralVectorField U = random_band_limited(g, 19);
        auto lhs = nonlinearity(2.5 * U);
        auto rhs = 6.25 * nonlinearity(U);
        CHECK(rel_l2_error(lhs, rhs) < 1e-12);
    }

    SUBCASE("single-mode shear annihilates M") {
        CHECK(max_abs(nonlinearity(single_mode_shear(g))) < 1e-13);
    }

    SUBCASE("Taylor-Green vorticity against the finite-difference oracle") {
        SpectralVectorField U = taylor_green_vorticity(g);
        PhysicalVectorField got = to_physical(nonlinearity(U));
        PhysicalVectorField expected(g);
        double h = g.L / (4.0 * g.n);
        for (int c = 0; c < 3; ++c) {
            std::size_t idx = 0;
            for (int ix = 0; ix < g.n; ++ix)
                for (int iy = 0; iy < g.n; ++iy)
                    for (int iz = 0; iz < g.n; ++iz, ++idx)
                        expected.comp[c][idx] =
                            oracle_m(c, g.coord(ix), g.coord(iy), g.coord(iz), h);
        }
        double rel =
            rel_l2_error(to_spectral(got), to_spectral(expected));
        CHECK(rel < 1e-3);
    }

    SUBCASE("M output stays divergence-free") {
        SpectralVectorField U = random_band_limited(g, 23);
        CHECK(relative_divergence(nonlinearity(U)) < 1e-12);
    }
}

TEST_CASE("operator-norm surrogates stay bounded across resolutions (light sweep)") {
    const std::vector<int> sweep = {16, 32};
    auto cz = check_calderon_zygmund(2.0, sweep, 10, 7);
    CHECK(cz.pass);
    auto rz = check_riesz(1.5, sweep, 10, 7);
    CHECK(rz.pass);
}
