#pragma once

#include <vector>

#include "pmy/convex_fn.hpp"
#include "pmy/envelope.hpp"

namespace pmy {

/// u(t,x) over the product of x_grid and t_values, t-major.
struct SpaceTimeField {
    GridSpec x_grid;
    std::vector<double> t_values;
    std::vector<std::vector<double>> values;  // values[ti][node_index]
};

/// Lax-Oleinik evaluation u(t,x) = inf_y { (t/p) ||(x-y)/t||^p + f(y) },
/// computed through the envelope with eps = t.
SpaceTimeField lax_oleinik(const ConvexFn& f, const SpaceSpec& space, double p,
                           const GridSpec& x_grid, const std::vector<double>& t_values);

struct HjResidual {
    double max_residual = 0.0;
    int interior_count = 0;
    int kink_count = 0;
};

/// Central-difference residual of du/dt + (1/p*) ||d_x u||_*^{p*} = 0 at
/// interior nodes. Nodes whose second central difference along any axis
/// exceeds 10 h are treated as kinks and excluded.
HjResidual hj_residual(const SpaceTimeField& field, const SpaceSpec& space, double p);

}  // namespace pmy
