#include "vortexlab/field.hpp"

#include <stdexcept>

namespace vlab {

double hermitian_defect(const SpectralVectorField& f) {
    const int n = f.grid.n;
    double worst = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto& a = f.comp[c];
        for (int ix = 0; ix < n; ++ix) {
            int jx = (n - ix) % n;
            for (int iy = 0; iy < n; ++iy) {
                int jy = (n - iy) % n;
                for (int iz = 0; iz < n; ++iz) {
                    int jz = (n - iz) % n;
                    cplx d = a[f.grid.flat(jx, jy, jz)] - std::conj(a[f.grid.flat(ix, iy, iz)]);
                    worst = std::max(worst, std::abs(d));
                }
            }
        }
    }
    return worst;
}

void axpby(cplx a, SpectralVectorField& x, cplx b, const SpectralVectorField& y) {
    if (x.grid != y.grid) throw std::invalid_argument("axpby: grid mismatch");
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < x.comp[c].size(); ++i)
            x.comp[c][i] = a * x.comp[c][i] + b * y.comp[c][i];
}

SpectralVectorField operator-(const SpectralVectorField& a, const SpectralVectorField& b) {
    SpectralVectorField r = a;
    axpby(cplx(1.0), r, cplx(-1.0), b);
    return r;
}

SpectralVectorField operator+(const SpectralVectorField& a, const SpectralVectorField& b) {
    SpectralVectorField r = a;
    axpby(cplx(1.0), r, cplx(1.0), b);
    return r;
}

SpectralVectorField operator*(double s, const SpectralVectorField& a) {
    SpectralVectorField r = a;
    for (auto& c : r.comp)
        for (auto& v : c) v *= s;
    return r;
}

} // namespace vlab
