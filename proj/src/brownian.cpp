#include "vortexlab/brownian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vortexlab/rng.hpp"

namespace vlab {

TimeGrid::TimeGrid(std::vector<double> nodes) : t(std::move(nodes)) {
    if (t.empty() || t.front() != 0.0)
        throw std::invalid_argument("TimeGrid: first node must be 0");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1]))
            throw std::invalid_argument("TimeGrid: nodes must be strictly increasing");
}

std::size_t TimeGrid::index_of(double time) const {
    auto it = std::lower_bound(t.begin(), t.end(), time);
    for (auto cand : {it, it == t.begin() ? it : it - 1}) {
        if (cand != t.end()) {
            double tol = 1e-12 * std::max(1.0, std::abs(*cand));
            if (std::abs(*cand - time) <= tol) return static_cast<std::size_t>(cand - t.begin());
        }
    }
    throw std::invalid_argument("TimeGrid: requested time is not a grid node");
}

TimeGrid TimeGrid::graded(double T, int M, double gamma) {
    if (!(T > 0.0) || M < 1 || !(gamma >= 1.0))
        throw std::invalid_argument("TimeGrid::graded: T > 0, M >= 1, gamma >= 1 required");
    std::vector<double> nodes(static_cast<std::size_t>(M) + 1);
    for (int m = 0; m <= M; ++m)
        nodes[static_cast<std::size_t>(m)] = T * std::pow(static_cast<double>(m) / M, gamma);
    nodes.front() = 0.0;
    nodes.back() = T;
    return TimeGrid(std::move(nodes));
}

TimeGrid TimeGrid::uniform(double T, int steps) {
    if (!(T > 0.0) || steps < 1) throw std::invalid_argument("TimeGrid::uniform: bad arguments");
    std::vector<double> nodes(static_cast<std::size_t>(steps) + 1);
    for (int m = 0; m <= steps; ++m) nodes[static_cast<std::size_t>(m)] = T * m / steps;
    return TimeGrid(std::move(nodes));
}

TimeGrid TimeGrid::merge(const std::vector<TimeGrid>& grids) {
    std::vector<double> all;
    for (const auto& g : grids) all.insert(all.end(), g.t.begin(), g.t.end());
    std::sort(all.begin(), all.end());
    std::vector<double> out;
    for (double v : all) {
        if (out.empty() || v - out.back() > 1e-12 * std::max(1.0, std::abs(v))) out.push_back(v);
    }
    return TimeGrid(std::move(out));
}

BrownianPaths sample_paths(std::uint64_t seed, const TimeGrid& grid, int n_channels) {
    if (n_channels < 0) throw std::invalid_argument("sample_paths: negative channel count");
    BrownianPaths p;
    p.seed = seed;
    p.grid = grid;
    p.beta.resize(static_cast<std::size_t>(n_channels));
    for (int i = 0; i < n_channels; ++i) {
        NormalSampler normal(derive_seed(seed, static_cast<std::uint64_t>(i)));
        auto& b = p.beta[static_cast<std::size_t>(i)];
        b.assign(grid.nodes(), 0.0);
        for (std::size_t m = 1; m < grid.nodes(); ++m) {
            double dt = grid.t[m] - grid.t[m - 1];
            b[m] = b[m - 1] + std::sqrt(dt) * normal();
        }
    }
    return p;
}

} // namespace vlab
