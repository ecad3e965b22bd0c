#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "vortexlab/special_functions.hpp"

using namespace vlab;

TEST_CASE("beta function basics") {
    // B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b); spot values from lgamma arithmetic
    CHECK(beta_fn(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(beta_fn(2.0, 3.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-13));
    CHECK(beta_fn(0.5, 0.5) == doctest::Approx(M_PI).epsilon(1e-13));
    CHECK_THROWS_AS((void)log_beta(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS((void)log_beta(1.0, -2.0), std::domain_error);
}

TEST_CASE("quadrature constants at p = 1.8") {
    BetaConstants c = beta_constants(1.8);
    // arguments: (3/2)(2/p - 1) = 1/6, (3/2)(1 - 1/p) = 2/3
    CHECK(c.a1 == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(c.b1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(c.finite1);
    CHECK(c.value1 == doctest::Approx(6.677476047133833).epsilon(1e-10));
    // arguments: 3(1/p - 1/2) = 1/6, 1 - 3/(2p) = 1/6
    CHECK(c.a2 == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(c.b2 == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(c.finite2);
    CHECK(c.value2 == doctest::Approx(11.565727779959978).epsilon(1e-10));
}

TEST_CASE("divergence outside the admissible exponent range") {
    // p -> 3/2+: the second constant's argument 1 - 3/(2p) -> 0+
    BetaConstants edge_low = beta_constants(1.5);
    CHECK_FALSE(edge_low.finite2);
    CHECK(std::isinf(edge_low.value2));
    // p -> 2-: the first constant's argument (3/2)(2/p-1) -> 0+
    BetaConstants edge_high = beta_constants(2.0);
    CHECK_FALSE(edge_high.finite1);
    CHECK(std::isinf(edge_high.value1));
    // pole growth approaching the edge
    CHECK(beta_constants(1.52).value2 > beta_constants(1.6).value2);
    CHECK(beta_constants(1.6).value2 > beta_constants(1.8).value2);
}
