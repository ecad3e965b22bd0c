#include "vortexlab/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "vortexlab/fft.hpp"

namespace vlab {

double lp_norm(const PhysicalVectorField& f, double p) {
    if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be >= 1");
    const auto& c0 = f.comp[0];
    const auto& c1 = f.comp[1];
    const auto& c2 = f.comp[2];
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < c0.size(); ++i) {
            double mag2 = c0[i] * c0[i] + c1[i] * c1[i] + c2[i] * c2[i];
            m = std::max(m, mag2);
        }
        return std::sqrt(m);
    }
    double acc = 0.0;
    if (p == 2.0) {
        for (std::size_t i = 0; i < c0.size(); ++i)
            acc += c0[i] * c0[i] + c1[i] * c1[i] + c2[i] * c2[i];
        return std::sqrt(acc * f.grid.cell_volume());
    }
    const double half_p = 0.5 * p;
    for (std::size_t i = 0; i < c0.size(); ++i) {
        double mag2 = c0[i] * c0[i] + c1[i] * c1[i] + c2[i] * c2[i];
        acc += std::pow(mag2, half_p);
    }
    return std::pow(acc * f.grid.cell_volume(), 1.0 / p);
}

double lp_norm(const SpectralVectorField& f, double p) { return lp_norm(to_physical(f), p); }

double l2_norm_spectral(const SpectralVectorField& f) {
    double acc = 0.0;
    for (const auto& c : f.comp)
        for (const cplx& v : c) acc += std::norm(v);
    double L = f.grid.L;
    return std::sqrt(acc * L * L * L);
}

} // namespace vlab
