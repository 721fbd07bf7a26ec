#include "pmy/flow.hpp"

#include <cmath>
#include <stdexcept>

namespace pmy {

namespace {

// recover (a, b) of a 1D energy a v^2/2 + b v from its gradient; throws when
// the gradient is not affine
std::pair<double, double> affine_gradient_1d(const ConvexFn& energy) {
    if (energy.dim != 1)
        throw std::invalid_argument("flow: fixture must be 1D");
    const double g0 = energy.subgradient({0.0})[0];
    const double g1 = energy.subgradient({1.0})[0];
    const double gm = energy.subgradient({-1.0})[0];
    const double a = g1 - g0;
    if (std::abs((g0 - gm) - a) > 1e-9)
        throw std::invalid_argument("flow: unsupported fixture (gradient not affine)");
    return {a, g0};
}

}  // namespace

FlowTrajectory minimizing_movement(const ConvexFn& energy, const SpaceSpec& space, double p,
                                   double tau, int steps, const Vec& u0) {
    if (!(tau > 0.0)) throw std::invalid_argument("minimizing_movement: tau must be > 0");
    if (steps < 1) throw std::invalid_argument("minimizing_movement: steps must be >= 1");
    const double e0 = energy.evaluate(u0);
    if (e0 == kInf) throw std::domain_error("minimizing_movement: u0 outside DOM(E)");

    FlowTrajectory traj;
    traj.tau = tau;
    traj.states.push_back(u0);
    traj.energies.push_back(e0);
    traj.residuals.push_back(0.0);
    const PowerParams params(p, tau);
    for (int n = 1; n <= steps; ++n) {
        const ProxSolution sol = prox(energy, space, params, traj.states.back());
        traj.states.push_back(sol.minimizer);
        traj.energies.push_back(energy.evaluate(sol.minimizer));
        traj.residuals.push_back(sol.optimality_gap);
    }
    return traj;
}

std::vector<ExponentialFormulaRow> exponential_formula_check(const ConvexFn& energy,
                                                             const SpaceSpec& space, double t,
                                                             const std::vector<int>& n_list,
                                                             const Vec& u0) {
    if (!(t > 0.0)) throw std::invalid_argument("exponential_formula_check: t must be > 0");
    const auto [a, b] = affine_gradient_1d(energy);
    double reference;
    if (a > 0.0)
        reference = -b / a + (u0[0] + b / a) * std::exp(-a * t);
    else if (a == 0.0)
        reference = u0[0] - b * t;
    else
        throw std::invalid_argument("exponential_formula_check: need convex quadratic");

    std::vector<ExponentialFormulaRow> rows;
    for (int n : n_list) {
        if (n < 1) throw std::invalid_argument("exponential_formula_check: n must be >= 1");
        const PowerParams params(2.0, t / n);
        Vec u = u0;
        for (int k = 0; k < n; ++k) u = prox(energy, space, params, u).minimizer;
        rows.push_back({n, std::abs(u[0] - reference)});
    }
    return rows;
}

std::vector<OdeErrorRow> ode_reference_error(const ConvexFn& energy, double p, double tau,
                                             int steps, const Vec& u0) {
    const auto ab = affine_gradient_1d(energy);  // rejects nonsmooth fixtures
    (void)ab;
    const SpaceSpec space = SpaceSpec::euclidean(1);
    const FlowTrajectory traj = minimizing_movement(energy, space, p, tau, steps, u0);

    // u' = -sign(E'(u)) |E'(u)|^{1/(p-1)}, with 0 at equilibria
    const auto rhs = [&](double u) {
        const double g = energy.subgradient({u})[0];
        if (g == 0.0) return 0.0;
        return -(g > 0 ? 1.0 : -1.0) * std::pow(std::abs(g), 1.0 / (p - 1.0));
    };

    std::vector<OdeErrorRow> rows;
    double u = u0[0];
    const int substeps = 100;
    const double h = tau / substeps;
    for (int n = 1; n <= steps; ++n) {
        for (int s = 0; s < substeps; ++s) {
            const double k1 = rhs(u);
            const double k2 = rhs(u + 0.5 * h * k1);
            const double k3 = rhs(u + 0.5 * h * k2);
            const double k4 = rhs(u + h * k3);
            u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        rows.push_back({n * tau, std::abs(traj.states[n][0] - u)});
    }
    return rows;
}

}  // namespace pmy
