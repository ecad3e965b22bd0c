#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "vortexlab/grid.hpp"

namespace vlab {

using cplx = std::complex<double>;

/// Real vector field sampled on the grid, one array per component.
struct PhysicalVectorField {
    GridSpec grid;
    std::array<std::vector<double>, 3> comp;

    PhysicalVectorField() = default;
    explicit PhysicalVectorField(const GridSpec& g) : grid(g) {
        for (auto& c : comp) c.assign(g.size(), 0.0);
    }

    bool finite() const {
        for (const auto& c : comp)
            for (double v : c)
                if (!std::isfinite(v)) return false;
        return true;
    }
};

/// Complex Fourier coefficients of a real vector field. Coefficients are
/// Fourier-series coefficients: the k=0 entry equals the spatial mean.
struct SpectralVectorField {
    GridSpec grid;
    std::array<std::vector<cplx>, 3> comp;

    SpectralVectorField() = default;
    explicit SpectralVectorField(const GridSpec& g) : grid(g) {
        for (auto& c : comp) c.assign(g.size(), cplx(0.0, 0.0));
    }

    bool finite() const {
        for (const auto& c : comp)
            for (const cplx& v : c)
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }
};

inline double max_abs(const SpectralVectorField& f) {
    double m = 0.0;
    for (const auto& c : f.comp)
        for (const cplx& v : c) m = std::max(m, std::abs(v));
    return m;
}

inline double max_abs(const PhysicalVectorField& f) {
    double m = 0.0;
    for (const auto& c : f.comp)
        for (double v : c) m = std::max(m, std::abs(v));
    return m;
}

/// max_k |F(-k) - conj(F(k))|; zero for coefficient sets of a real field.
double hermitian_defect(const SpectralVectorField& f);

/// In-place linear combination a*x + b*y -> x.
void axpby(cplx a, SpectralVectorField& x, cplx b, const SpectralVectorField& y);

SpectralVectorField operator-(const SpectralVectorField& a, const SpectralVectorField& b);
SpectralVectorField operator+(const SpectralVectorField& a, const SpectralVectorField& b);
SpectralVectorField operator*(double s, const SpectralVectorField& a);

} // namespace vlab
