#pragma once

#include <functional>
#include <utility>

#include "pmy/space.hpp"

namespace pmy {

/// Rectangular evaluation grid. points_per_axis nodes per axis, endpoints
/// included. Total node count is capped by a budget (default 1e7, override
/// via env PMOREAU_ORACLE_BUDGET).
struct GridSpec {
    Vec lo;
    Vec hi;
    int points_per_axis = 101;

    GridSpec() = default;
    GridSpec(Vec lo_, Vec hi_, int points_per_axis_);

    int dim() const { return static_cast<int>(lo.size()); }
    long long node_count() const;
    double step(int axis) const;
    double max_step() const;
    Vec node(long long index) const;  // lexicographic, last axis fastest
};

using Objective = std::function<double(const Vec&)>;

struct GridResult {
    Vec argmin;
    double min;
};

/// Exhaustive scan; ties broken by smallest node index. Throws if every node
/// evaluates to +inf.
GridResult grid_minimize(const Objective& objective, const GridSpec& grid);
GridResult grid_maximize(const Objective& objective, const GridSpec& grid);

/// Iteratively zooms the grid around the incumbent (span shrinks by 10x per
/// round). Assumes the objective is unimodal along the zoom path, which holds
/// for convex objectives.
GridResult grid_refine(const Objective& objective, const GridSpec& grid, int rounds);

long long oracle_budget();

}  // namespace pmy
