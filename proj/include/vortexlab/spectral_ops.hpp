#pragma once

#include "vortexlab/field.hpp"

namespace vlab {

/// d/dxi_axis as the multiplier i*k_axis (axis in {0,1,2}).
SpectralVectorField partial_derivative(const SpectralVectorField& f, int axis);

/// curl via i k x F(k).
SpectralVectorField curl(const SpectralVectorField& f);

/// divergence via i k . F(k); scalar coefficient array.
std::vector<cplx> divergence(const SpectralVectorField& f);

/// max_k |k . F(k)| / max_k |k| |F(k)|, a dimensionless divergence measure.
double relative_divergence(const SpectralVectorField& f);

/// 2/3-rule dealiasing: zero every mode with any |mode index| > n/3.
void dealias_inplace(SpectralVectorField& f);
SpectralVectorField dealias(const SpectralVectorField& f);

/// Heat semigroup e^{t Laplacian}: multiplier exp(-|k|^2 t), t >= 0.
SpectralVectorField heat_semigroup(const SpectralVectorField& f, double t);

/// Biot-Savart operator: K(U) = i k x U(k) / |k|^2, zero mean mode.
/// Output is divergence-free; curl(K(U)) = U for divergence-free
/// mean-zero U.
SpectralVectorField biot_savart(const SpectralVectorField& u);

/// Vorticity nonlinearity M(u) = -[(K(u).grad)u - (u.grad)K(u)],
/// evaluated pseudo-spectrally with 2/3 dealiasing on input and output.
SpectralVectorField nonlinearity(const SpectralVectorField& u);

} // namespace vlab
