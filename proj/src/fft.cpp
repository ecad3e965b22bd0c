#include "vortexlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace vlab {
namespace {

// One forward/backward plan pair per grid size. Plans are created with
// FFTW_UNALIGNED so fftw_execute_dft may run on any caller buffer; plan
// creation is serialized, execution on distinct buffers is thread-safe.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int n) {
    static std::map<int, PlanPair> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::size_t sz = static_cast<std::size_t>(n) * n * n;
    std::vector<cplx> a(sz), b(sz);
    PlanPair p;
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.fwd = fftw_plan_dft_3d(n, n, n, reinterpret_cast<fftw_complex*>(a.data()),
                             reinterpret_cast<fftw_complex*>(b.data()), FFTW_FORWARD, flags);
    p.bwd = fftw_plan_dft_3d(n, n, n, reinterpret_cast<fftw_complex*>(a.data()),
                             reinterpret_cast<fftw_complex*>(b.data()), FFTW_BACKWARD, flags);
    if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
    return cache.emplace(n, p).first->second;
}

void execute(fftw_plan plan, std::vector<cplx>& in, std::vector<cplx>& out) {
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

} // namespace

std::vector<cplx> forward_scaled_c(const std::vector<cplx>& in, int n) {
    auto& p = plans_for(n);
    std::vector<cplx> buf(in), out(in.size());
    execute(p.fwd, buf, out);
    double s = 1.0 / static_cast<double>(in.size());
    for (auto& v : out) v *= s;
    return out;
}

std::vector<cplx> forward_scaled(const std::vector<double>& in, int n) {
    std::vector<cplx> buf(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (!std::isfinite(in[i])) throw std::invalid_argument("to_spectral: non-finite input value");
        buf[i] = cplx(in[i], 0.0);
    }
    auto& p = plans_for(n);
    std::vector<cplx> out(in.size());
    execute(p.fwd, buf, out);
    double s = 1.0 / static_cast<double>(in.size());
    for (auto& v : out) v *= s;
    return out;
}

std::vector<double> backward_real(const std::vector<cplx>& in, int n) {
    auto& p = plans_for(n);
    std::vector<cplx> buf(in), out(in.size());
    execute(p.bwd, buf, out);
    std::vector<double> res(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) res[i] = out[i].real();
    return res;
}

SpectralVectorField to_spectral(const PhysicalVectorField& f) {
    SpectralVectorField out(f.grid);
    for (int c = 0; c < 3; ++c) out.comp[c] = forward_scaled(f.comp[c], f.grid.n);
    return out;
}

PhysicalVectorField to_physical(const SpectralVectorField& f) {
    if (!f.finite()) throw std::invalid_argument("to_physical: non-finite input value");
    PhysicalVectorField out(f.grid);
    for (int c = 0; c < 3; ++c) out.comp[c] = backward_real(f.comp[c], f.grid.n);
    return out;
}

} // namespace vlab
