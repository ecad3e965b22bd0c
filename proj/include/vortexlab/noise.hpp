#pragma once

#include <string>
#include <vector>

#include "vortexlab/field.hpp"

namespace vlab {

/// Closed-form radial kernel profiles selectable from config.
///   gaussian{eps,mass}:    mass * (2 pi eps^2)^{-3/2} exp(-r^2 / (2 eps^2))
///   mollified_dirac{eps}:  eps^{-3} rho(xi/eps), rho the unit-mass C^inf bump
///                          supported in the unit ball.
/// Grid values are rescaled so the grid quadrature of |h| equals `mass`
/// exactly, hence |h|_1 == mass and the k=0 symbol == mass.
struct KernelSpec {
    enum class Family { gaussian, mollified_dirac };
    Family family = Family::gaussian;
    double eps = 0.25;
    double mass = 1.0;

    std::string str() const;
    static KernelSpec parse(const std::string& text);
};

struct NoiseChannel {
    KernelSpec kernel;
    double lambda = 0.0;
    double h_l1 = 0.0;                // grid quadrature of |h|
    std::vector<double> symbol;       // real spectral symbol of h (size n^3)
    bool admissible = false;          // |lambda| > (sqrt(12)+3) |h|_1
    double alpha = 0.0;               // lambda^2/2 - 3/2 (|h|_1^2 + 2|lambda||h|_1)
};

/// Multiplicative convolution-noise structure: kernels h_i, amplitudes
/// lambda_i and their spectral symbols on a fixed grid.
class NoiseModel {
  public:
    NoiseModel() = default;
    NoiseModel(const GridSpec& grid, const std::vector<KernelSpec>& kernels,
               const std::vector<double>& lambdas);

    const GridSpec& grid() const { return grid_; }
    int channels() const { return static_cast<int>(ch_.size()); }
    const NoiseChannel& channel(int i) const;

    /// B_i u = h_i * u as the pointwise symbol product.
    SpectralVectorField convolve(int i, const SpectralVectorField& f) const;

    bool all_admissible() const;
    double min_alpha() const;
    /// gamma = 3 max_i (|h_i|_1 + |lambda_i|), the tail-bound constant.
    double gamma_constant() const;

  private:
    GridSpec grid_;
    std::vector<NoiseChannel> ch_;
};

/// Admissibility threshold factor sqrt(12)+3.
double admissibility_factor();

} // namespace vlab
