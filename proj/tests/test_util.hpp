#pragma once

#include <cmath>
#include <functional>

#include "vortexlab/fft.hpp"
#include "vortexlab/field.hpp"
#include "vortexlab/norms.hpp"
#include "vortexlab/rng.hpp"

namespace vlab::test {

/// Fill a physical field from a closed-form function of (x1, x2, x3, component).
inline PhysicalVectorField
make_field(const GridSpec& g, const std::function<double(double, double, double, int)>& fn) {
    PhysicalVectorField f(g);
    for (int c = 0; c < 3; ++c) {
        std::size_t idx = 0;
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy)
                for (int iz = 0; iz < g.n; ++iz, ++idx)
                    f.comp[c][idx] = fn(g.coord(ix), g.coord(iy), g.coord(iz), c);
    }
    return f;
}

inline PhysicalVectorField random_physical(const GridSpec& g, std::uint64_t seed) {
    PhysicalVectorField f(g);
    for (int c = 0; c < 3; ++c) {
        NormalSampler normal(derive_seed(seed, static_cast<std::uint64_t>(c)));
        for (auto& v : f.comp[c]) v = normal();
    }
    return f;
}

inline double rel_l2_error(const SpectralVectorField& a, const SpectralVectorField& b) {
    double den = l2_norm_spectral(b);
    return den > 0.0 ? l2_norm_spectral(a - b) / den : l2_norm_spectral(a);
}

inline double max_pointwise_gap(const PhysicalVectorField& a, const PhysicalVectorField& b) {
    double worst = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < a.comp[c].size(); ++i)
            worst = std::max(worst, std::abs(a.comp[c][i] - b.comp[c][i]));
    return worst;
}

} // namespace vlab::test
