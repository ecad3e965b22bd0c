#pragma once

namespace vlab {

/// log Beta(a,b) via lgamma; a,b > 0.
double log_beta(double a, double b);
double beta_fn(double a, double b);

/// The two quadrature constants of the fixed-point estimates:
///   B(3/2(2/p-1), 3/2(1-1/p))  and  B(3(1/p-1/2), 1-3/(2p)).
/// Both are finite exactly when 3/2 < p < 2; outside that range the
/// offending argument is reported and the value is +inf.
struct BetaConstants {
    double a1, b1, value1;
    double a2, b2, value2;
    bool finite1, finite2;
};

BetaConstants beta_constants(double p);

} // namespace vlab
