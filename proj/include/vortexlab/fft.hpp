#pragma once

#include <vector>

#include "vortexlab/field.hpp"

namespace vlab {

/// Forward transform: Fourier-series coefficients of a real field
/// (forward DFT scaled by 1/n^3). Throws on non-finite input.
SpectralVectorField to_spectral(const PhysicalVectorField& f);

/// Inverse transform (unscaled inverse DFT, real parts taken).
PhysicalVectorField to_physical(const SpectralVectorField& f);

/// Scalar-array variants used by diagnostics that work component-free.
std::vector<cplx> forward_scaled(const std::vector<double>& in, int n);
std::vector<double> backward_real(const std::vector<cplx>& in, int n);
std::vector<cplx> forward_scaled_c(const std::vector<cplx>& in, int n);

} // namespace vlab
