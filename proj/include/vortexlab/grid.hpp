#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace vlab {

/// Uniform periodic box [0,L)^3 with n points per axis.
///
/// Index convention: flat index (ix*n + iy)*n + iz, iz fastest. The spectral
/// index m maps to the signed integer mode m <= n/2 ? m : m-n, so modes run
/// over {-n/2+1, ..., n/2} and the physical wavenumber is (2*pi/L) times that.
struct GridSpec {
    int n = 0;
    double L = 0.0;

    GridSpec() = default;
    GridSpec(int n_, double L_) : n(n_), L(L_) {
        if (n < 8 || n % 2 != 0)
            throw std::invalid_argument("GridSpec: n must be even and >= 8");
        if (!(L > 0.0) || !std::isfinite(L))
            throw std::invalid_argument("GridSpec: L must be positive and finite");
    }

    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
    double spacing() const { return L / n; }
    double cell_volume() const { double h = spacing(); return h * h * h; }

    /// Signed integer mode for spectral index m in [0,n).
    int mode_index(int m) const { return m <= n / 2 ? m : m - n; }

    /// Physical wavenumber along one axis.
    double wavenumber(int m) const { return 2.0 * M_PI / L * mode_index(m); }

    /// Wavenumber used by derivative-type multipliers: the Nyquist component
    /// is zeroed so real fields keep Hermitian symmetry under i*k products.
    double wavenumber_deriv(int m) const {
        if (m == n / 2) return 0.0;
        return wavenumber(m);
    }

    std::array<double, 3> wavevector(int mx, int my, int mz) const {
        return {wavenumber(mx), wavenumber(my), wavenumber(mz)};
    }
    std::array<double, 3> wavevector_deriv(int mx, int my, int mz) const {
        return {wavenumber_deriv(mx), wavenumber_deriv(my), wavenumber_deriv(mz)};
    }

    std::size_t flat(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * n + iy) * n + iz;
    }

    /// Grid point coordinate along one axis.
    double coord(int i) const { return L * i / n; }

    bool operator==(const GridSpec& o) const { return n == o.n && L == o.L; }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

} // namespace vlab
