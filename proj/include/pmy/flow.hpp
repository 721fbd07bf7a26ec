#pragma once

#include <vector>

#include "pmy/convex_fn.hpp"
#include "pmy/envelope.hpp"

namespace pmy {

/// Implicit-Euler (minimizing movement) trajectory U^0..U^N with energies.
struct FlowTrajectory {
    double tau = 0.0;
    std::vector<Vec> states;
    std::vector<double> energies;
    std::vector<double> residuals;  // certified optimality gap per step, 0 for step 0
};

/// U^n = J_tau(U^{n-1}) via the envelope with eps = tau. Energies are
/// non-increasing; every state after step 0 carries a certified
/// Euler-Lagrange residual.
FlowTrajectory minimizing_movement(const ConvexFn& energy, const SpaceSpec& space, double p,
                                   double tau, int steps, const Vec& u0);

struct ExponentialFormulaRow {
    int n;
    double error;  // ||J_{t/n}^n(u0) - reference(t)||
};

/// Semigroup exponential formula, p = 2 with an analytic reference. Supported
/// fixtures: 1D quadratic a v^2/2 + b v (reference via the linear ODE) and
/// the zero function.
std::vector<ExponentialFormulaRow> exponential_formula_check(const ConvexFn& energy,
                                                             const SpaceSpec& space, double t,
                                                             const std::vector<int>& n_list,
                                                             const Vec& u0);

struct OdeErrorRow {
    double t;
    double error;  // |U_tau^n - u_ref(t)|
};

/// Compares the implicit scheme against a fine RK4 integration of
/// u' = -sign(E'(u)) |E'(u)|^{1/(p-1)}. 1D smooth fixtures only.
std::vector<OdeErrorRow> ode_reference_error(const ConvexFn& energy, double p, double tau,
                                             int steps, const Vec& u0);

}  // namespace pmy
