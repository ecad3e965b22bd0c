#include "vortexlab/kato.hpp"

#include <cmath>
#include <stdexcept>

#include "vortexlab/norms.hpp"
#include "vortexlab/spectral_ops.hpp"

namespace vlab {

double kato_weight0(double p, double t) { return std::pow(t, 1.0 - 1.5 / p); }
double kato_weight_grad(double p, double t) { return std::pow(t, 1.5 * (1.0 - 1.0 / p)); }

namespace {

void append_node(KatoTrajectory& traj, const SpectralVectorField& y, double t, double p) {
    traj.t.push_back(t);
    if (t <= 0.0) {
        // both weights vanish as t -> 0+ for finite grid data
        traj.w0.push_back(0.0);
        traj.w1.push_back(0.0);
        traj.w2.push_back(0.0);
        traj.w3.push_back(0.0);
        return;
    }
    traj.w0.push_back(kato_weight0(p, t) * lp_norm(y, p));
    double wg = kato_weight_grad(p, t);
    traj.w1.push_back(wg * lp_norm(partial_derivative(y, 0), p));
    traj.w2.push_back(wg * lp_norm(partial_derivative(y, 1), p));
    traj.w3.push_back(wg * lp_norm(partial_derivative(y, 2), p));
}

} // namespace

double KatoTrajectory::znorm() const {
    double z = 0.0;
    for (std::size_t m = 0; m < t.size(); ++m) {
        if (t[m] <= 0.0) continue;
        double wg = std::max(w1[m], std::max(w2[m], w3[m]));
        z = std::max(z, w0[m] + wg);
    }
    return z;
}

KatoTrajectory kato_trajectory(const std::vector<SpectralVectorField>& y, const TimeGrid& grid,
                               double p) {
    if (y.size() != grid.nodes()) throw std::invalid_argument("kato_trajectory: size mismatch");
    KatoTrajectory traj;
    traj.p = p;
    for (std::size_t m = 0; m < y.size(); ++m) append_node(traj, y[m], grid.t[m], p);
    return traj;
}

double kato_distance(const std::vector<SpectralVectorField>& a,
                     const std::vector<SpectralVectorField>& b, const TimeGrid& grid, double p) {
    if (a.size() != b.size() || a.size() != grid.nodes())
        throw std::invalid_argument("kato_distance: size mismatch");
    KatoTrajectory traj;
    traj.p = p;
    for (std::size_t m = 0; m < a.size(); ++m) append_node(traj, a[m] - b[m], grid.t[m], p);
    return traj.znorm();
}

} // namespace vlab
