#include "vortexlab/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

#include "vortexlab/fft.hpp"

namespace vlab {

SpectralVectorField partial_derivative(const SpectralVectorField& f, int axis) {
    if (axis < 0 || axis > 2) throw std::out_of_range("partial_derivative: axis must be in {0,1,2}");
    const GridSpec& g = f.grid;
    SpectralVectorField out(g);
    const int n = g.n;
    for (int c = 0; c < 3; ++c) {
        const auto& a = f.comp[c];
        auto& b = out.comp[c];
        std::size_t idx = 0;
        for (int ix = 0; ix < n; ++ix) {
            for (int iy = 0; iy < n; ++iy) {
                for (int iz = 0; iz < n; ++iz, ++idx) {
                    int m = axis == 0 ? ix : (axis == 1 ? iy : iz);
                    double k = g.wavenumber_deriv(m);
                    b[idx] = cplx(0.0, k) * a[idx];
                }
            }
        }
    }
    return out;
}

SpectralVectorField curl(const SpectralVectorField& f) {
    const GridSpec& g = f.grid;
    SpectralVectorField out(g);
    const int n = g.n;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            for (int iz = 0; iz < n; ++iz, ++idx) {
                auto k = g.wavevector_deriv(ix, iy, iz);
                cplx f0 = f.comp[0][idx], f1 = f.comp[1][idx], f2 = f.comp[2][idx];
                out.comp[0][idx] = cplx(0.0, 1.0) * (k[1] * f2 - k[2] * f1);
                out.comp[1][idx] = cplx(0.0, 1.0) * (k[2] * f0 - k[0] * f2);
                out.comp[2][idx] = cplx(0.0, 1.0) * (k[0] * f1 - k[1] * f0);
            }
        }
    }
    return out;
}

std::vector<cplx> divergence(const SpectralVectorField& f) {
    const GridSpec& g = f.grid;
    std::vector<cplx> out(g.size());
    const int n = g.n;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            for (int iz = 0; iz < n; ++iz, ++idx) {
                auto k = g.wavevector_deriv(ix, iy, iz);
                out[idx] = cplx(0.0, 1.0) *
                           (k[0] * f.comp[0][idx] + k[1] * f.comp[1][idx] + k[2] * f.comp[2][idx]);
            }
        }
    }
    return out;
}

double relative_divergence(const SpectralVectorField& f) {
    const GridSpec& g = f.grid;
    const int n = g.n;
    double num = 0.0, den = 0.0;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            for (int iz = 0; iz < n; ++iz, ++idx) {
                auto k = g.wavevector_deriv(ix, iy, iz);
                double kn = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
                cplx d = k[0] * f.comp[0][idx] + k[1] * f.comp[1][idx] + k[2] * f.comp[2][idx];
                double mag = std::sqrt(std::norm(f.comp[0][idx]) + std::norm(f.comp[1][idx]) +
                                       std::norm(f.comp[2][idx]));
                num = std::max(num, std::abs(d));
                den = std::max(den, kn * mag);
            }
        }
    }
    return den > 0.0 ? num / den : 0.0;
}

void dealias_inplace(SpectralVectorField& f) {
    const GridSpec& g = f.grid;
    const int n = g.n;
    const int cut = n / 3; // keep |mode| <= n/3
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        bool kx = std::abs(g.mode_index(ix)) > cut;
        for (int iy = 0; iy < n; ++iy) {
            bool ky = kx || std::abs(g.mode_index(iy)) > cut;
            for (int iz = 0; iz < n; ++iz, ++idx) {
                if (ky || std::abs(g.mode_index(iz)) > cut) {
                    f.comp[0][idx] = 0.0;
                    f.comp[1][idx] = 0.0;
                    f.comp[2][idx] = 0.0;
                }
            }
        }
    }
}

SpectralVectorField dealias(const SpectralVectorField& f) {
    SpectralVectorField out = f;
    dealias_inplace(out);
    return out;
}

SpectralVectorField heat_semigroup(const SpectralVectorField& f, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::domain_error("heat_semigroup: t must be finite and >= 0");
    const GridSpec& g = f.grid;
    SpectralVectorField out(g);
    const int n = g.n;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        double kx = g.wavenumber(ix);
        for (int iy = 0; iy < n; ++iy) {
            double ky = g.wavenumber(iy);
            for (int iz = 0; iz < n; ++iz, ++idx) {
                double kz = g.wavenumber(iz);
                double m = std::exp(-(kx * kx + ky * ky + kz * kz) * t);
                out.comp[0][idx] = m * f.comp[0][idx];
                out.comp[1][idx] = m * f.comp[1][idx];
                out.comp[2][idx] = m * f.comp[2][idx];
            }
        }
    }
    return out;
}

SpectralVectorField biot_savart(const SpectralVectorField& u) {
    const GridSpec& g = u.grid;
    SpectralVectorField out(g);
    const int n = g.n;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            for (int iz = 0; iz < n; ++iz, ++idx) {
                auto k = g.wavevector_deriv(ix, iy, iz);
                double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                if (k2 == 0.0) continue; // mean (and pure-Nyquist) modes carry no velocity
                cplx u0 = u.comp[0][idx], u1 = u.comp[1][idx], u2 = u.comp[2][idx];
                cplx i_over_k2(0.0, 1.0 / k2);
                out.comp[0][idx] = i_over_k2 * (k[1] * u2 - k[2] * u1);
                out.comp[1][idx] = i_over_k2 * (k[2] * u0 - k[0] * u2);
                out.comp[2][idx] = i_over_k2 * (k[0] * u1 - k[1] * u0);
            }
        }
    }
    return out;
}

SpectralVectorField nonlinearity(const SpectralVectorField& u) {
    const GridSpec& g = u.grid;
    SpectralVectorField ud = dealias(u);
    SpectralVectorField x = biot_savart(ud);

    PhysicalVectorField up = to_physical(ud);
    PhysicalVectorField xp = to_physical(x);

    // advect[j] = (X.grad)U_j - (U.grad)X_j, accumulated one direction at a time
    std::array<std::vector<double>, 3> advect;
    for (auto& a : advect) a.assign(g.size(), 0.0);
    for (int i = 0; i < 3; ++i) {
        PhysicalVectorField du = to_physical(partial_derivative(ud, i));
        PhysicalVectorField dx = to_physical(partial_derivative(x, i));
        const auto& xi = xp.comp[i];
        const auto& ui = up.comp[i];
        for (int j = 0; j < 3; ++j) {
            auto& acc = advect[j];
            const auto& duj = du.comp[j];
            const auto& dxj = dx.comp[j];
            for (std::size_t s = 0; s < acc.size(); ++s)
                acc[s] += xi[s] * duj[s] - ui[s] * dxj[s];
        }
    }

    PhysicalVectorField m(g);
    for (int j = 0; j < 3; ++j)
        for (std::size_t s = 0; s < m.comp[j].size(); ++s) m.comp[j][s] = -advect[j][s];

    SpectralVectorField out = to_spectral(m);
    dealias_inplace(out);
    return out;
}

} // namespace vlab
