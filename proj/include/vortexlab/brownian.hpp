#pragma once

#include <cstdint>
#include <vector>

#include "vortexlab/grid.hpp"

namespace vlab {

/// Strictly increasing time nodes starting at 0.
struct TimeGrid {
    std::vector<double> t;

    TimeGrid() = default;
    explicit TimeGrid(std::vector<double> nodes);

    std::size_t nodes() const { return t.size(); }
    double horizon() const { return t.empty() ? 0.0 : t.back(); }

    /// Index of a node equal to `time` (within rel/abs 1e-12); throws when
    /// `time` is off the grid — the Gamma transform is never interpolated.
    std::size_t index_of(double time) const;

    /// Graded mesh t_m = T (m/M)^gamma, m = 0..M.
    static TimeGrid graded(double T, int M, double gamma);
    static TimeGrid uniform(double T, int steps);

    /// Sorted union of several grids, deduplicated within tolerance; the
    /// shared values let different solvers see the same Brownian path.
    static TimeGrid merge(const std::vector<TimeGrid>& grids);
};

/// Independent Brownian channels sampled on a time grid,
/// seed-deterministic: same seed + grid give bit-identical paths.
struct BrownianPaths {
    std::uint64_t seed = 0;
    TimeGrid grid;
    std::vector<std::vector<double>> beta; // [channel][node]

    int channels() const { return static_cast<int>(beta.size()); }
};

BrownianPaths sample_paths(std::uint64_t seed, const TimeGrid& grid, int n_channels);

} // namespace vlab
