#pragma once

#include <utility>
#include <vector>

#include "pmy/convex_fn.hpp"
#include "pmy/grid.hpp"
#include "pmy/space.hpp"

namespace pmy {

enum class ProxSolver { ClosedForm, Ternary1d, SubgradientNd, OracleGrid };

const char* to_string(ProxSolver solver);

/// One proximal solve: the minimizer u_eps = J_eps(u) of
/// v -> (1/(p eps^{p-1})) ||u-v||^p + f(v), the envelope value f_eps(u),
/// the derivative A_eps(u) = -F^p((u_eps-u)/eps), and the certified
/// optimality residual.
struct ProxSolution {
    Vec minimizer;
    double envelope_value = 0.0;
    Vec derivative;
    double optimality_gap = 0.0;
    ProxSolver solver = ProxSolver::ClosedForm;
    int iterations = 0;
};

struct SolverFailure : std::runtime_error {
    ProxSolution best;
    SolverFailure(const std::string& msg, ProxSolution best_)
        : std::runtime_error(msg), best(std::move(best_)) {}
};

/// Envelope objective (1/(p eps^{p-1})) ||u-v||^p + f(v) at v.
double prox_objective(const ConvexFn& f, const SpaceSpec& space, const PowerParams& params,
                      const Vec& u, const Vec& v);

/// Dispatch: closed form if registered, ternary search for dim 1, projected
/// subgradient descent otherwise. Optimality is certified through the
/// subgradient inequality at probe points around the minimizer; failure to
/// certify throws SolverFailure with the best iterate attached.
ProxSolution prox(const ConvexFn& f, const SpaceSpec& space, const PowerParams& params,
                  const Vec& u);

/// Grid-refinement oracle variant, for cross-checks at dim <= 3.
ProxSolution prox_oracle(const ConvexFn& f, const SpaceSpec& space, const PowerParams& params,
                         const Vec& u, const GridSpec& grid, int rounds);

double envelope_value(const ConvexFn& f, const SpaceSpec& space, const PowerParams& params,
                      const Vec& u);

/// |f_eps(u) - (eps/p) ||A_eps(u)||_*^{p*} - f(u_eps)|
double assertion_i_gap(const ProxSolution& sol, const ConvexFn& f, const SpaceSpec& space,
                       const PowerParams& params);

/// (analytic, numeric) directional derivative of f_eps at u along unit w.
std::pair<double, double> gateaux_directional_check(const ConvexFn& f, const SpaceSpec& space,
                                                    const PowerParams& params, const Vec& u,
                                                    const Vec& w);

/// d/d eps f_eps(u) = -(1/(p* eps^p)) ||u_eps - u||^p
double eps_derivative(const ConvexFn& f, const SpaceSpec& space, double p, const Vec& u,
                      double eps);

struct EpsProfileRow {
    double eps;
    double envelope;  // f_eps(u)
    double dist;      // ||u_eps - u||
};

/// eps_list strictly decreasing. f_eps(u) is non-decreasing and
/// ||u_eps - u|| non-increasing as eps decreases.
std::vector<EpsProfileRow> eps_monotonicity_profile(const ConvexFn& f, const SpaceSpec& space,
                                                    double p, const Vec& u,
                                                    const std::vector<double>& eps_list);

struct ConvergenceRow {
    double eps;
    double envelope;   // f_eps(u)
    double value_gap;  // |f_eps(u) - f(u)|, or f_eps(u) itself when f(u) = +inf
    double dist;       // ||u_eps - u||
    double bound;      // (eps/p*) ||xi||_*^{p*} for xi = subgradient_select(f, u)
};

std::vector<ConvergenceRow> convergence_profile(const ConvexFn& f, const SpaceSpec& space,
                                                double p, const Vec& u,
                                                const std::vector<double>& eps_list);

struct MinimalSectionResult {
    Vec a0;  // least-dual-norm element of df(u)
    std::vector<std::pair<double, double>> profile;  // (eps, ||A_eps(u) - a0||_*)
};

MinimalSectionResult minimal_section(const ConvexFn& f, const SpaceSpec& space,
                                     const PowerParams& params, const Vec& u,
                                     const std::vector<double>& eps_list);

/// (analytic, numeric) conjugate of the envelope at xi:
/// analytic = (eps/p*) ||xi||_*^{p*} + f*(xi), numeric via the grid transform.
std::pair<double, double> envelope_conjugate(const ConvexFn& f, const SpaceSpec& space,
                                             const PowerParams& params, const Vec& xi,
                                             const GridSpec& grid);

}  // namespace pmy
