#include "vortexlab/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vlab {

double log_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("log_beta: arguments must be positive");
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double beta_fn(double a, double b) { return std::exp(log_beta(a, b)); }

BetaConstants beta_constants(double p) {
    BetaConstants c{};
    c.a1 = 1.5 * (2.0 / p - 1.0);
    c.b1 = 1.5 * (1.0 - 1.0 / p);
    c.a2 = 3.0 * (1.0 / p - 0.5);
    c.b2 = 1.0 - 1.5 / p;
    c.finite1 = c.a1 > 0.0 && c.b1 > 0.0;
    c.finite2 = c.a2 > 0.0 && c.b2 > 0.0;
    double inf = std::numeric_limits<double>::infinity();
    c.value1 = c.finite1 ? beta_fn(c.a1, c.b1) : inf;
    c.value2 = c.finite2 ? beta_fn(c.a2, c.b2) : inf;
    return c;
}

} // namespace vlab
