#pragma once

#include <vector>

#include "vortexlab/brownian.hpp"
#include "vortexlab/field.hpp"

namespace vlab {

/// Weighted-norm time series defining the Kato-space norm:
///   w0(t) = t^{1-3/(2p)} |y(t)|_p,  wi(t) = t^{(3/2)(1-1/p)} |D_i y(t)|_p.
/// znorm = sup over grid times t>0 and i of (w0 + wi).
struct KatoTrajectory {
    double p = 0.0;
    std::vector<double> t;
    std::vector<double> w0, w1, w2, w3;

    double znorm() const;
};

double kato_weight0(double p, double t);
double kato_weight_grad(double p, double t);

KatoTrajectory kato_trajectory(const std::vector<SpectralVectorField>& y, const TimeGrid& grid,
                               double p);

/// znorm of the node-wise difference of two trajectories on the same grid.
double kato_distance(const std::vector<SpectralVectorField>& a,
                     const std::vector<SpectralVectorField>& b, const TimeGrid& grid, double p);

} // namespace vlab
