#include "vortexlab/field_gen.hpp"

#include <cmath>
#include <stdexcept>

#include "vortexlab/fft.hpp"
#include "vortexlab/norms.hpp"
#include "vortexlab/rng.hpp"

namespace vlab {

SpectralVectorField random_band_limited(const GridSpec& grid, std::uint64_t seed,
                                        const BandLimitedOptions& opts) {
    // white noise in physical space keeps the coefficients exactly Hermitian
    PhysicalVectorField w(grid);
    for (int c = 0; c < 3; ++c) {
        NormalSampler normal(derive_seed(seed, 101 + static_cast<std::uint64_t>(c)));
        for (auto& v : w.comp[c]) v = normal();
    }
    SpectralVectorField f = to_spectral(w);

    const int n = grid.n;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            for (int iz = 0; iz < n; ++iz, ++idx) {
                bool keep = std::abs(grid.mode_index(ix)) <= opts.kmax &&
                            std::abs(grid.mode_index(iy)) <= opts.kmax &&
                            std::abs(grid.mode_index(iz)) <= opts.kmax;
                if (!keep) {
                    f.comp[0][idx] = f.comp[1][idx] = f.comp[2][idx] = 0.0;
                    continue;
                }
                auto k = grid.wavevector_deriv(ix, iy, iz);
                double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                if (k2 == 0.0) {
                    if (opts.mean_zero) f.comp[0][idx] = f.comp[1][idx] = f.comp[2][idx] = 0.0;
                    continue;
                }
                if (opts.divergence_free) {
                    cplx dot = k[0] * f.comp[0][idx] + k[1] * f.comp[1][idx] + k[2] * f.comp[2][idx];
                    for (int c = 0; c < 3; ++c) f.comp[c][idx] -= k[c] * dot / k2;
                }
            }
        }
    }
    return f;
}

SpectralVectorField single_mode_shear(const GridSpec& grid) {
    PhysicalVectorField f(grid);
    double a = 2.0 * M_PI / grid.L;
    std::size_t idx = 0;
    for (int ix = 0; ix < grid.n; ++ix) {
        double s = std::sin(a * grid.coord(ix));
        for (int iy = 0; iy < grid.n; ++iy)
            for (int iz = 0; iz < grid.n; ++iz, ++idx) f.comp[1][idx] = s;
    }
    return to_spectral(f);
}

SpectralVectorField taylor_green_vorticity(const GridSpec& grid) {
    PhysicalVectorField f(grid);
    double a = 2.0 * M_PI / grid.L;
    std::size_t idx = 0;
    for (int ix = 0; ix < grid.n; ++ix) {
        double x = a * grid.coord(ix);
        for (int iy = 0; iy < grid.n; ++iy) {
            double y = a * grid.coord(iy);
            for (int iz = 0; iz < grid.n; ++iz, ++idx) {
                double z = a * grid.coord(iz);
                // curl of (sin x cos y cos z, -cos x sin y cos z, 0), unit wavenumber a
                f.comp[0][idx] = -a * std::cos(x) * std::sin(y) * std::sin(z);
                f.comp[1][idx] = -a * std::sin(x) * std::cos(y) * std::sin(z);
                f.comp[2][idx] = 2.0 * a * std::sin(x) * std::sin(y) * std::cos(z);
            }
        }
    }
    return to_spectral(f);
}

SpectralVectorField rescale_to_l32(const SpectralVectorField& f, double target_norm32) {
    double cur = lp_norm(f, 1.5);
    if (!(cur > 0.0)) {
        if (target_norm32 == 0.0) return f;
        throw std::invalid_argument("rescale_to_l32: zero field cannot reach nonzero norm");
    }
    return (target_norm32 / cur) * f;
}

SpectralVectorField u0_preset(const std::string& name, const GridSpec& grid, double norm32,
                              std::uint64_t seed) {
    SpectralVectorField f;
    if (name == "single_mode") f = single_mode_shear(grid);
    else if (name == "taylor_green") f = taylor_green_vorticity(grid);
    else if (name == "band_limited")
        f = random_band_limited(grid, derive_seed(seed, 7701));
    else if (name == "zero")
        return SpectralVectorField(grid);
    else
        throw std::invalid_argument("unknown u0 preset: " + name);
    return rescale_to_l32(f, norm32);
}

} // namespace vlab
