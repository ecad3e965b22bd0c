#include "vortexlab/noise.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "vortexlab/fft.hpp"

namespace vlab {
namespace {

double min_image(double d, double L) {
    d = std::fmod(d, L);
    if (d > 0.5 * L) d -= L;
    if (d < -0.5 * L) d += L;
    return d;
}

double profile_value(const KernelSpec& k, double r) {
    switch (k.family) {
        case KernelSpec::Family::gaussian: {
            double s2 = k.eps * k.eps;
            return std::exp(-0.5 * r * r / s2) / std::pow(2.0 * M_PI * s2, 1.5);
        }
        case KernelSpec::Family::mollified_dirac: {
            double x = r / k.eps;
            if (x >= 1.0) return 0.0;
            return std::exp(-1.0 / (1.0 - x * x)) / (k.eps * k.eps * k.eps);
        }
    }
    return 0.0;
}

} // namespace

std::string KernelSpec::str() const {
    char buf[96];
    if (family == Family::gaussian)
        std::snprintf(buf, sizeof buf, "gaussian{eps=%g,mass=%g}", eps, mass);
    else
        std::snprintf(buf, sizeof buf, "mollified_dirac{eps=%g}", eps);
    return buf;
}

KernelSpec KernelSpec::parse(const std::string& text) {
    KernelSpec spec;
    auto brace = text.find('{');
    std::string name = text.substr(0, brace);
    if (name == "gaussian") spec.family = Family::gaussian;
    else if (name == "mollified_dirac") spec.family = Family::mollified_dirac;
    else throw std::invalid_argument("unknown kernel family: " + name);

    spec.mass = 1.0;
    if (brace != std::string::npos) {
        auto end = text.find('}', brace);
        if (end == std::string::npos) throw std::invalid_argument("kernel spec missing '}': " + text);
        std::string args = text.substr(brace + 1, end - brace - 1);
        std::size_t pos = 0;
        while (pos < args.size()) {
            auto next = args.find(',', pos);
            std::string kv = args.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("bad kernel argument: " + kv);
            std::string key = kv.substr(0, eq);
            double value = std::stod(kv.substr(eq + 1));
            if (key == "eps") spec.eps = value;
            else if (key == "mass") spec.mass = value;
            else throw std::invalid_argument("unknown kernel argument: " + key);
            if (next == std::string::npos) break;
            pos = next + 1;
        }
    }
    if (!(spec.eps > 0.0)) throw std::invalid_argument("kernel eps must be > 0");
    if (spec.family == Family::mollified_dirac) spec.mass = 1.0;
    return spec;
}

double admissibility_factor() { return std::sqrt(12.0) + 3.0; }

NoiseModel::NoiseModel(const GridSpec& grid, const std::vector<KernelSpec>& kernels,
                       const std::vector<double>& lambdas)
    : grid_(grid) {
    if (kernels.size() != lambdas.size())
        throw std::invalid_argument("NoiseModel: kernel/lambda count mismatch");
    const int n = grid.n;
    ch_.reserve(kernels.size());
    for (std::size_t i = 0; i < kernels.size(); ++i) {
        NoiseChannel ch;
        ch.kernel = kernels[i];
        ch.lambda = lambdas[i];

        std::vector<double> h(grid.size());
        std::size_t idx = 0;
        for (int ix = 0; ix < n; ++ix) {
            double dx = min_image(grid.coord(ix), grid.L);
            for (int iy = 0; iy < n; ++iy) {
                double dy = min_image(grid.coord(iy), grid.L);
                for (int iz = 0; iz < n; ++iz, ++idx) {
                    double dz = min_image(grid.coord(iz), grid.L);
                    h[idx] = profile_value(ch.kernel, std::sqrt(dx * dx + dy * dy + dz * dz));
                }
            }
        }
        double raw_mass = 0.0;
        for (double v : h) raw_mass += std::abs(v);
        raw_mass *= grid.cell_volume();
        if (!(raw_mass > 0.0))
            throw std::invalid_argument("kernel has zero grid mass (eps too small for grid?)");
        double scale = ch.kernel.mass / raw_mass;
        for (double& v : h) v *= scale;
        ch.h_l1 = ch.kernel.mass;

        // symbol of the continuum convolution: L^3 times the series coefficients
        auto coef = forward_scaled(h, n);
        double vol = grid.L * grid.L * grid.L;
        ch.symbol.resize(coef.size());
        for (std::size_t s = 0; s < coef.size(); ++s) ch.symbol[s] = vol * coef[s].real();
        // radial kernels are even, so the symbol is real; Young gives |symbol| <= |h|_1
        for (double v : ch.symbol)
            if (std::abs(v) > ch.h_l1 * (1.0 + 1e-12))
                throw std::logic_error("kernel symbol violates Young bound");

        ch.alpha = 0.5 * ch.lambda * ch.lambda -
                   1.5 * (ch.h_l1 * ch.h_l1 + 2.0 * std::abs(ch.lambda) * ch.h_l1);
        ch.admissible = std::abs(ch.lambda) > admissibility_factor() * ch.h_l1;
        ch_.push_back(std::move(ch));
    }
}

const NoiseChannel& NoiseModel::channel(int i) const {
    if (i < 0 || i >= channels()) throw std::out_of_range("NoiseModel: channel out of range");
    return ch_[static_cast<std::size_t>(i)];
}

SpectralVectorField NoiseModel::convolve(int i, const SpectralVectorField& f) const {
    const NoiseChannel& ch = channel(i);
    if (f.grid != grid_) throw std::invalid_argument("convolve: grid mismatch");
    SpectralVectorField out(grid_);
    for (int c = 0; c < 3; ++c)
        for (std::size_t s = 0; s < ch.symbol.size(); ++s)
            out.comp[c][s] = ch.symbol[s] * f.comp[c][s];
    return out;
}

bool NoiseModel::all_admissible() const {
    for (const auto& c : ch_)
        if (!c.admissible) return false;
    return !ch_.empty();
}

double NoiseModel::min_alpha() const {
    if (ch_.empty()) throw std::logic_error("NoiseModel: no channels");
    double a = ch_[0].alpha;
    for (const auto& c : ch_) a = std::min(a, c.alpha);
    return a;
}

double NoiseModel::gamma_constant() const {
    if (ch_.empty()) throw std::logic_error("NoiseModel: no channels");
    double g = 0.0;
    for (const auto& c : ch_) g = std::max(g, c.h_l1 + std::abs(c.lambda));
    return 3.0 * g;
}

} // namespace vlab
