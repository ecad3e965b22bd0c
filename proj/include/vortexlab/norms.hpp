#pragma once

#include <limits>

#include "vortexlab/field.hpp"

namespace vlab {

/// Grid-quadrature L^p norm of the pointwise Euclidean magnitude,
/// (sum |f(xi)|^p h^3)^(1/p); p = infinity gives the max magnitude.
double lp_norm(const PhysicalVectorField& f, double p);

/// Convenience: transform then take the physical norm.
double lp_norm(const SpectralVectorField& f, double p);

/// Parseval route for p=2: sqrt(L^3 * sum |F(k)|^2). Equals lp_norm(.,2)
/// up to rounding under the chosen transform normalization.
double l2_norm_spectral(const SpectralVectorField& f);

constexpr double kInfNorm = std::numeric_limits<double>::infinity();

} // namespace vlab
