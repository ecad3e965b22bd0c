#pragma once

#include <cstdint>
#include <string>

#include "vortexlab/field.hpp"

namespace vlab {

struct BandLimitedOptions {
    int kmax = 5;          // keep |mode index| <= kmax per axis
    bool divergence_free = true;
    bool mean_zero = true;
};

/// Band-limited white-noise vector field with Hermitian symmetry,
/// optionally projected onto the divergence-free subspace.
SpectralVectorField random_band_limited(const GridSpec& grid, std::uint64_t seed,
                                        const BandLimitedOptions& opts = {});

/// U = (0, sin(2 pi x1 / L), 0).
SpectralVectorField single_mode_shear(const GridSpec& grid);

/// Curl of the Taylor-Green velocity
/// V = (sin a x1 cos a x2 cos a x3, -cos a x1 sin a x2 cos a x3, 0), a = 2 pi / L.
SpectralVectorField taylor_green_vorticity(const GridSpec& grid);

/// Rescale so that |f|_{3/2} equals the target.
SpectralVectorField rescale_to_l32(const SpectralVectorField& f, double target_norm32);

/// Named initial-data presets: "single_mode", "taylor_green", "band_limited".
SpectralVectorField u0_preset(const std::string& name, const GridSpec& grid, double norm32,
                              std::uint64_t seed);

} // namespace vlab
