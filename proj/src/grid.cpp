#include "pmy/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace pmy {

GridSpec::GridSpec(Vec lo_, Vec hi_, int points_per_axis_)
    : lo(std::move(lo_)), hi(std::move(hi_)), points_per_axis(points_per_axis_) {
    if (lo.size() != hi.size()) throw std::invalid_argument("GridSpec: lo/hi size mismatch");
    if (lo.empty()) throw std::invalid_argument("GridSpec: empty bounds");
    if (points_per_axis < 2) throw std::invalid_argument("GridSpec: need >= 2 points per axis");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i])) throw std::invalid_argument("GridSpec: lo must be < hi componentwise");
    if (node_count() > oracle_budget())
        throw std::invalid_argument("GridSpec: node count exceeds oracle budget");
}

long long GridSpec::node_count() const {
    long long n = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        n *= points_per_axis;
        if (n > (1LL << 50)) return n;  // avoid overflow on absurd inputs
    }
    return n;
}

double GridSpec::step(int axis) const {
    return (hi[axis] - lo[axis]) / (points_per_axis - 1);
}

double GridSpec::max_step() const {
    double h = 0.0;
    for (int a = 0; a < dim(); ++a) h = std::max(h, step(a));
    return h;
}

Vec GridSpec::node(long long index) const {
    Vec v(lo.size());
    for (int a = dim() - 1; a >= 0; --a) {
        const long long k = index % points_per_axis;
        index /= points_per_axis;
        v[a] = lo[a] + k * step(a);
    }
    return v;
}

long long oracle_budget() {
    if (const char* env = std::getenv("PMOREAU_ORACLE_BUDGET")) {
        const long long b = std::atoll(env);
        if (b > 0) return b;
    }
    return 10'000'000;
}

GridResult grid_minimize(const Objective& objective, const GridSpec& grid) {
    const long long n = grid.node_count();
    double best = std::numeric_limits<double>::infinity();
    long long best_index = -1;
    for (long long i = 0; i < n; ++i) {
        const double val = objective(grid.node(i));
        if (val < best) {
            best = val;
            best_index = i;
        }
    }
    if (best_index < 0)
        throw std::runtime_error("grid_minimize: objective is +inf on every grid node");
    return {grid.node(best_index), best};
}

GridResult grid_maximize(const Objective& objective, const GridSpec& grid) {
    GridResult r = grid_minimize([&](const Vec& v) { return -objective(v); }, grid);
    r.min = -r.min;
    return r;
}

GridResult grid_refine(const Objective& objective, const GridSpec& grid, int rounds) {
    if (rounds < 1) throw std::invalid_argument("grid_refine: rounds must be >= 1");
    GridSpec g = grid;
    GridResult best = grid_minimize(objective, g);
    for (int r = 1; r < rounds; ++r) {
        Vec lo(g.lo.size()), hi(g.hi.size());
        for (std::size_t i = 0; i < lo.size(); ++i) {
            const double span = (g.hi[i] - g.lo[i]) / 10.0;
            lo[i] = best.argmin[i] - span / 2.0;
            hi[i] = best.argmin[i] + span / 2.0;
        }
        g = GridSpec(std::move(lo), std::move(hi), g.points_per_axis);
        const GridResult next = grid_minimize(objective, g);
        if (next.min < best.min) best = next;  // refinement never increases the incumbent
    }
    return best;
}

}  // namespace pmy
