#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "test_util.hpp"
#include "vortexlab/fft.hpp"
#include "vortexlab/norms.hpp"
#include "vortexlab/snapshot.hpp"
#include "vortexlab/spectral_ops.hpp"

using namespace vlab;
using namespace vlab::test;

TEST_CASE("grid invariants") {
    CHECK_THROWS(GridSpec(7, 1.0));  // odd
    CHECK_THROWS(GridSpec(4, 1.0));  // too small
    CHECK_THROWS(GridSpec(16, 0.0)); // bad box
    GridSpec g(16, 2.0 * M_PI);
    // wavenumber negates under index reflection (Nyquist is self-paired)
    for (int m = 0; m < g.n; ++m) {
        if (m == g.n / 2) continue;
        CHECK(g.wavenumber((g.n - m) % g.n) == doctest::Approx(-g.wavenumber(m)).epsilon(1e-15));
    }
    CHECK(g.wavenumber_deriv(g.n / 2) == 0.0);
}

TEST_CASE("transform pair: zero, single cosine, roundtrip") {
    GridSpec g(16, 2.0 * M_PI);

    SUBCASE("zero field gives zero coefficients") {
        SpectralVectorField F = to_spectral(PhysicalVectorField(g));
        CHECK(max_abs(F) == 0.0);
    }

    SUBCASE("cos(2 pi x/L) e1 has exactly two coefficients of 1/2") {
        auto f = make_field(g, [&](double x, double, double, int c) {
            return c == 0 ? std::cos(2.0 * M_PI * x / g.L) : 0.0;
        });
        SpectralVectorField F = to_spectral(f);
        std::size_t plus = g.flat(1, 0, 0), minus = g.flat(g.n - 1, 0, 0);
        CHECK(std::abs(F.comp[0][plus] - cplx(0.5, 0.0)) < 1e-14);
        CHECK(std::abs(F.comp[0][minus] - cplx(0.5, 0.0)) < 1e-14);
        double rest = 0.0;
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < F.comp[c].size(); ++i)
                if (!(c == 0 && (i == plus || i == minus)))
                    rest = std::max(rest, std::abs(F.comp[c][i]));
        CHECK(rest < 1e-14);
    }

    SUBCASE("roundtrip is the identity to 1e-12 at n in {8,16,32}") {
        for (int n : {8, 16, 32}) {
            GridSpec gg(n, 2.0 * M_PI);
            auto f = random_physical(gg, 17);
            auto back = to_physical(to_spectral(f));
            CHECK(max_pointwise_gap(f, back) / max_abs(f) < 1e-12);
        }
    }

    SUBCASE("k=0 coefficient is the spatial mean") {
        auto f = random_physical(g, 3);
        SpectralVectorField F = to_spectral(f);
        double mean = 0.0;
        for (double v : f.comp[1]) mean += v;
        mean /= static_cast<double>(g.size());
        CHECK(F.comp[1][0].real() == doctest::Approx(mean).epsilon(1e-12));
    }

    SUBCASE("non-finite input is rejected") {
        PhysicalVectorField f(g);
        f.comp[0][5] = std::nan("");
        CHECK_THROWS_AS((void)to_spectral(f), std::invalid_argument);
    }
}

TEST_CASE("partial derivatives") {
    GridSpec g(16, 2.0 * M_PI);

    SUBCASE("D1 of sin(x) e2 is cos(x) e2") {
        auto f = make_field(g, [](double x, double, double, int c) {
            return c == 1 ? std::sin(x) : 0.0;
        });
        auto expected = make_field(g, [](double x, double, double, int c) {
            return c == 1 ? std::cos(x) : 0.0;
        });
        auto got = to_physical(partial_derivative(to_spectral(f), 0));
        CHECK(max_pointwise_gap(got, expected) < 1e-13);
    }

    SUBCASE("derivative of a constant field vanishes") {
        auto f = make_field(g, [](double, double, double, int) { return 3.25; });
        for (int axis : {0, 1, 2})
            CHECK(max_abs(partial_derivative(to_spectral(f), axis)) < 1e-14);
    }

    SUBCASE("mixed derivatives commute") {
        SpectralVectorField F = to_spectral(random_physical(g, 5));
        auto d12 = partial_derivative(partial_derivative(F, 0), 1);
        auto d21 = partial_derivative(partial_derivative(F, 1), 0);
        CHECK(rel_l2_error(d12, d21) < 1e-14);
    }

    SUBCASE("invalid axis") {
        SpectralVectorField F(g);
        CHECK_THROWS_AS((void)partial_derivative(F, 3), std::out_of_range);
    }
}

TEST_CASE("curl and divergence") {
    GridSpec g(16, 2.0 * M_PI);

    SUBCASE("curl of a gradient vanishes") {
        // gradient of a scalar: equal spectral multiplier per component
        SpectralVectorField F = to_spectral(random_physical(g, 7));
        SpectralVectorField grad(g);
        const int n = g.n;
        std::size_t idx = 0;
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy)
                for (int iz = 0; iz < n; ++iz, ++idx) {
                    auto k = g.wavevector_deriv(ix, iy, iz);
                    cplx s = F.comp[0][idx];
                    for (int c = 0; c < 3; ++c) grad.comp[c][idx] = cplx(0.0, k[c]) * s;
                }
        CHECK(max_abs(curl(grad)) < 1e-13 * std::max(1.0, max_abs(grad)));
    }

    SUBCASE("divergence of curl vanishes") {
        SpectralVectorField F = to_spectral(random_physical(g, 11));
        auto d = divergence(curl(F));
        double worst = 0.0;
        for (const auto& v : d) worst = std::max(worst, std::abs(v));
        CHECK(worst < 1e-12 * max_abs(F));
    }

    SUBCASE("curl(0,0,cos x) = (0, sin x, 0)") {
        auto f = make_field(g, [](double x, double, double, int c) {
            return c == 2 ? std::cos(x) : 0.0;
        });
        auto expected = make_field(g, [](double x, double, double, int c) {
            return c == 1 ? std::sin(x) : 0.0;
        });
        CHECK(max_pointwise_gap(to_physical(curl(to_spectral(f))), expected) < 1e-13);
    }
}

TEST_CASE("lp norms") {
    GridSpec g(16, 2.0 * M_PI);

    SUBCASE("constant field of magnitude c has norm c L^{3/p}") {
        double c0 = 0.3, c1 = -0.4, c2 = 1.2;
        double mag = std::sqrt(c0 * c0 + c1 * c1 + c2 * c2);
        auto f = make_field(g, [&](double, double, double, int c) {
            return c == 0 ? c0 : (c == 1 ? c1 : c2);
        });
        for (double p : {1.0, 1.5, 2.0, 3.0})
            CHECK(lp_norm(f, p) == doctest::Approx(mag * std::pow(g.L, 3.0 / p)).epsilon(1e-12));
        CHECK(lp_norm(f, kInfNorm) == doctest::Approx(mag).epsilon(1e-12));
    }

    SUBCASE("zero field") { CHECK(lp_norm(PhysicalVectorField(g), 2.0) == 0.0); }

    SUBCASE("Parseval: |f|_2^2 = L^3 sum |F|^2") {
        auto f = random_physical(g, 23);
        double phys = lp_norm(f, 2.0);
        double spec = l2_norm_spectral(to_spectral(f));
        CHECK(phys == doctest::Approx(spec).epsilon(1e-10));
    }

    SUBCASE("p < 1 rejected") {
        CHECK_THROWS_AS((void)lp_norm(PhysicalVectorField(g), 0.5), std::domain_error);
    }

    SUBCASE("triangle inequality and pointwise monotonicity") {
        auto a = random_physical(g, 31);
        auto b = random_physical(g, 37);
        PhysicalVectorField sum(g);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < sum.comp[c].size(); ++i)
                sum.comp[c][i] = a.comp[c][i] + b.comp[c][i];
        for (double p : {1.5, 2.0, 3.0})
            CHECK(lp_norm(sum, p) <= lp_norm(a, p) + lp_norm(b, p) + 1e-10);
        PhysicalVectorField scaled = a;
        for (int c = 0; c < 3; ++c)
            for (auto& v : scaled.comp[c]) v *= 0.5;
        for (double p : {1.5, 2.0, 3.0}) CHECK(lp_norm(scaled, p) <= lp_norm(a, p));
    }
}

TEST_CASE("hermitian symmetry is preserved by the operator suite") {
    GridSpec g(16, 2.0 * M_PI);
    SpectralVectorField F = to_spectral(random_physical(g, 41));
    CHECK(hermitian_defect(F) < 1e-13 * max_abs(F));
    CHECK(hermitian_defect(partial_derivative(F, 1)) < 1e-13 * max_abs(F));
    CHECK(hermitian_defect(curl(F)) < 1e-13 * max_abs(F));
    CHECK(hermitian_defect(heat_semigroup(F, 0.3)) < 1e-13 * max_abs(F));
    CHECK(hermitian_defect(biot_savart(F)) < 1e-13 * max_abs(F));
    CHECK(hermitian_defect(dealias(F)) < 1e-13 * max_abs(F));
}

TEST_CASE("VMF1 snapshot roundtrip") {
    GridSpec g(8, 1.5);
    auto f = random_physical(g, 53);
    auto path = (std::filesystem::temp_directory_path() / "vlab_snapshot_test.vmf").string();
    write_snapshot(path, f);
    auto back = read_snapshot(path);
    CHECK(back.grid.n == g.n);
    CHECK(back.grid.L == g.L);
    CHECK(max_pointwise_gap(f, back) == 0.0);
    std::filesystem::remove(path);
}
