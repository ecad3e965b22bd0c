#pragma once

#include <string>

#include "vortexlab/field.hpp"

namespace vlab {

/// Binary field snapshot, format VMF1:
///   magic "VMF1" | n (uint64 LE) | L (float64 LE) |
///   3 * n^3 float64 LE, component-major, xi3-fastest index order.
void write_snapshot(const std::string& path, const PhysicalVectorField& f);
PhysicalVectorField read_snapshot(const std::string& path);

} // namespace vlab
