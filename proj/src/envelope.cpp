#include "pmy/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace pmy {

const char* to_string(ProxSolver solver) {
    switch (solver) {
        case ProxSolver::ClosedForm: return "closed_form";
        case ProxSolver::Ternary1d: return "ternary_1d";
        case ProxSolver::SubgradientNd: return "subgradient_nd";
        case ProxSolver::OracleGrid: return "oracle_grid";
    }
    return "?";
}

double prox_objective(const ConvexFn& f, const SpaceSpec& space, const PowerParams& params,
                      const Vec& u, const Vec& v) {
    const double fv = f.evaluate(v);
    if (fv == kInf) return kInf;
    const double d = norm(space, sub(u, v));
    return std::pow(d, params.p) / (params.p * std::pow(params.eps, params.p - 1.0)) + fv;
}

namespace {

Vec derivative_from_minimizer(const SpaceSpec& space, const PowerParams& params, const Vec& u,
                              const Vec& minimizer) {
    const Vec step = scale(1.0 / params.eps, sub(minimizer, u));
    return scale(-1.0, duality_map_p(space, params.p, step));
}

// deterministic probe directions: coordinate axes first, then seeded random
std::vector<Vec> probe_directions(const SpaceSpec& space, int count) {
    std::vector<Vec> dirs;
    for (int i = 0; i < space.dim && static_cast<int>(dirs.size()) < count; ++i) {
        Vec e(space.dim, 0.0);
        e[i] = 1.0;
        dirs.push_back(e);
        e[i] = -1.0;
        if (static_cast<int>(dirs.size()) < count) dirs.push_back(e);
    }
    std::mt19937 rng(12345u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    while (static_cast<int>(dirs.size()) < count) {
        Vec d(space.dim);
        for (double& x : d) x = gauss(rng);
        const double n = euclidean_norm(d);
        if (n < 1e-8) continue;
        dirs.push_back(scale(1.0 / n, d));
    }
    return dirs;
}

// max positive violation of f(w) >= f(u_eps) + <A, w - u_eps> over the probe
// cloud, scaled by (1 + |f(u_eps)|)
double certify(const ConvexFn& f, const SpaceSpec& space, const Vec& minimizer,
               const Vec& derivative) {
    const double f_min = f.evaluate(minimizer);
    if (f_min == kInf) return kInf;
    const double scale_r = 1.0 + norm(space, minimizer);
    double worst = 0.0;
    for (const Vec& d : probe_directions(space, 16)) {
        for (double r : {1e-3, 1e-2, 0.1, 1.0}) {
            const Vec w = add(minimizer, scale(r * scale_r, d));
            const double fw = f.evaluate(w);
            if (fw == kInf) continue;
            const double violation = f_min + dot(derivative, sub(w, minimizer)) - fw;
            worst = std::max(worst, violation);
        }
    }
    return worst / (1.0 + std::abs(f_min));
}

ProxSolution finish(const ConvexFn& f, const SpaceSpec& space, const PowerParams& params,
                    const Vec& u, Vec minimizer, ProxSolver solver, int iterations) {
    ProxSolution sol;
    sol.minimizer = std::move(minimizer);
    // for p < 2 a ~1e-12 argmin error inflates to ~1e-6 in the duality map, so
    // prox fixed points must be hit exactly; u competes as a candidate
    if (solver != ProxSolver::ClosedForm &&
        prox_objective(f, space, params, u, u) <=
            prox_objective(f, space, params, u, sol.minimizer))
        sol.minimizer = u;
    sol.envelope_value = prox_objective(f, space, params, u, sol.minimizer);
    sol.derivative = derivative_from_minimizer(space, params, u, sol.minimizer);
    sol.optimality_gap = certify(f, space, sol.minimizer, sol.derivative);
    sol.solver = solver;
    sol.iterations = iterations;
    if (!(sol.optimality_gap <= 1e-6))
        throw SolverFailure("prox(" + f.label + ", p=" + std::to_string(params.p) +
                                ", eps=" + std::to_string(params.eps) +
                                "): optimality certification failed, gap = " +
                                std::to_string(sol.optimality_gap),
                            sol);
    return sol;
}

// 1D: expanding coarse scan to bracket the minimizer, then ternary search
std::pair<Vec, int> ternary_1d(const ConvexFn& f, const SpaceSpec& space,
                               const PowerParams& params, const Vec& u) {
    auto phi = [&](double v) { return prox_objective(f, space, params, u, {v}); };
    double a = 0.0, b = 0.0;
    bool bracketed = false;
    double half_width = 1.0 + std::abs(u[0]);
    for (int attempt = 0; attempt < 60 && !bracketed; ++attempt, half_width *= 2.0) {
        const int m = 65;
        const double lo = u[0] - half_width, h = 2.0 * half_width / (m - 1);
        int best = -1;
        double best_val = kInf;
        for (int i = 0; i < m; ++i) {
            const double val = phi(lo + i * h);
            if (val < best_val) {
                best_val = val;
                best = i;
            }
        }
        if (best > 0 && best < m - 1 && best_val < kInf) {
            a = lo + (best - 1) * h;
            b = lo + (best + 1) * h;
            bracketed = true;
        }
    }
    if (!bracketed) throw std::runtime_error("prox: could not bracket the 1D minimizer");
    int iters = 0;
    // ternary down to a width where objective comparisons are still reliable
    while (b - a > 1e-6 * (1.0 + std::abs(a) + std::abs(b)) && iters < 200) {
        const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
        if (phi(m1) <= phi(m2))
            b = m2;
        else
            a = m1;
        ++iters;
    }
    // near the minimum phi differences sink below machine epsilon while the
    // one-sided derivative stays O(1); bisect its sign change when available
    auto dphi = [&](double v) -> double {
        const double d = u[0] - v;
        const double power = -std::copysign(
            std::pow(std::abs(d) / params.eps, params.p - 1.0), d);
        return power + f.subgradient({v})[0];
    };
    bool bisected = false;
    if (f.domain_contains({a}) && f.domain_contains({b})) {
        try {
            double ga = dphi(a), gb = dphi(b);
            if (ga <= 0.0 && gb >= 0.0) {
                for (int it = 0; it < 120 && b - a > 1e-15 * (1.0 + std::abs(a) + std::abs(b));
                     ++it, ++iters) {
                    const double m = 0.5 * (a + b);
                    const double gm = dphi(m);
                    if (gm <= 0.0) {
                        a = m;
                        ga = gm;
                    } else {
                        b = m;
                        gb = gm;
                    }
                }
                bisected = true;
            }
        } catch (const std::domain_error&) {
        }
    }
    if (!bisected) {
        while (b - a > 1e-12 * (1.0 + std::abs(a) + std::abs(b)) && iters < 400) {
            const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
            if (phi(m1) <= phi(m2))
                b = m2;
            else
                a = m1;
            ++iters;
        }
    }
    return {{0.5 * (a + b)}, iters};
}

Vec objective_subgradient(const ConvexFn& f, const SpaceSpec& space, const PowerParams& params,
                          const Vec& u, const Vec& v) {
    // grad of the power-of-distance term is -(1/eps^{p-1}) F^p(u - v)
    const Vec fp = duality_map_p(space, params.p, sub(u, v));
    Vec g = scale(-1.0 / std::pow(params.eps, params.p - 1.0), fp);
    return add(g, f.subgradient(v));
}

// Polyak-style subgradient descent with a shrinking gap target, followed by
// coordinate-wise ternary polish. Certification is the acceptance gate.
std::pair<Vec, int> subgradient_nd(const ConvexFn& f, const SpaceSpec& space,
                                   const PowerParams& params, const Vec& u) {
    Vec v = f.project_domain(u);
    Vec best_v = v;
    double best_val = prox_objective(f, space, params, u, v);
    int iters = 0;
    double delta = 0.5 * (1.0 + std::abs(best_val));
    const int stages = 40, per_stage = 125;
    for (int s = 0; s < stages; ++s, delta *= 0.5) {
        for (int k = 0; k < per_stage; ++k, ++iters) {
            const Vec g = objective_subgradient(f, space, params, u, v);
            const double gg = dot(g, g);
            if (gg < 1e-30) break;
            const double val = prox_objective(f, space, params, u, v);
            const double step = (val - (best_val - delta)) / gg;
            if (step <= 0.0) break;
            v = f.project_domain(sub(v, scale(step, g)));
            const double new_val = prox_objective(f, space, params, u, v);
            if (new_val < best_val) {
                best_val = new_val;
                best_v = v;
            }
        }
        v = best_v;
    }
    // polish: cyclic 1D ternary along coordinates (fixtures here are smooth)
    for (int cycle = 0; cycle < 60; ++cycle) {
        double improved = 0.0;
        for (int i = 0; i < space.dim; ++i) {
            auto phi = [&](double t) {
                Vec w = best_v;
                w[i] = t;
                return prox_objective(f, space, params, u, w);
            };
            double a = best_v[i] - 1.0, b = best_v[i] + 1.0;
            for (int it = 0; it < 120 && b - a > 1e-14 * (1.0 + std::abs(a) + std::abs(b));
                 ++it) {
                const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
                if (phi(m1) <= phi(m2))
                    b = m2;
                else
                    a = m1;
            }
            const double t = 0.5 * (a + b);
            const double val = phi(t);
            if (val < best_val) {
                improved += best_val - val;
                best_val = val;
                best_v[i] = t;
            }
        }
        ++iters;
        if (improved < 1e-16 * (1.0 + std::abs(best_val))) break;
    }
    return {best_v, iters};
}

}  // namespace

ProxSolution prox(const ConvexFn& f, const SpaceSpec& space, const PowerParams& params,
                  const Vec& u) {
    if (static_cast<int>(u.size()) != space.dim || f.dim != space.dim)
        throw std::invalid_argument("prox: dimension mismatch");
    if (f.prox_closed_form) {
        if (auto v = f.prox_closed_form(space, params, u))
            return finish(f, space, params, u, std::move(*v), ProxSolver::ClosedForm, 0);
    }
    if (space.dim == 1) {
        auto [v, iters] = ternary_1d(f, space, params, u);
        return finish(f, space, params, u, std::move(v), ProxSolver::Ternary1d, iters);
    }
    auto [v, iters] = subgradient_nd(f, space, params, u);
    return finish(f, space, params, u, std::move(v), ProxSolver::SubgradientNd, iters);
}

ProxSolution prox_oracle(const ConvexFn& f, const SpaceSpec& space, const PowerParams& params,
                         const Vec& u, const GridSpec& grid, int rounds) {
    const GridResult r = grid_refine(
        [&](const Vec& v) { return prox_objective(f, space, params, u, v); }, grid, rounds);
    ProxSolution sol;
    sol.minimizer = r.argmin;
    sol.envelope_value = r.min;
    sol.derivative = derivative_from_minimizer(space, params, u, sol.minimizer);
    sol.optimality_gap = certify(f, space, sol.minimizer, sol.derivative);
    sol.solver = ProxSolver::OracleGrid;
    sol.iterations = rounds;
    return sol;
}

double envelope_value(const ConvexFn& f, const SpaceSpec& space, const PowerParams& params,
                      const Vec& u) {
    return prox(f, space, params, u).envelope_value;
}

double assertion_i_gap(const ProxSolution& sol, const ConvexFn& f, const SpaceSpec& space,
                       const PowerParams& params) {
    const double dual = dual_norm(space, sol.derivative);
    const double rhs = params.eps / params.p * std::pow(dual, params.p_star) +
                       f.evaluate(sol.minimizer);
    return std::abs(sol.envelope_value - rhs);
}

std::pair<double, double> gateaux_directional_check(const ConvexFn& f, const SpaceSpec& space,
                                                    const PowerParams& params, const Vec& u,
                                                    const Vec& w) {
    const ProxSolution sol = prox(f, space, params, u);
    const double analytic = dot(sol.derivative, w);
    const double t = 1e-5 * (1.0 + norm(space, u));
    const double fp = envelope_value(f, space, params, add(u, scale(t, w)));
    const double fm = envelope_value(f, space, params, sub(u, scale(t, w)));
    return {analytic, (fp - fm) / (2.0 * t)};
}

double eps_derivative(const ConvexFn& f, const SpaceSpec& space, double p, const Vec& u,
                      double eps) {
    const PowerParams params(p, eps);
    const ProxSolution sol = prox(f, space, params, u);
    const double d = norm(space, sub(sol.minimizer, u));
    return -std::pow(d, p) / (params.p_star * std::pow(eps, p));
}

std::vector<EpsProfileRow> eps_monotonicity_profile(const ConvexFn& f, const SpaceSpec& space,
                                                    double p, const Vec& u,
                                                    const std::vector<double>& eps_list) {
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("eps_monotonicity_profile: eps_list must decrease");
    std::vector<EpsProfileRow> rows;
    for (double eps : eps_list) {
        const ProxSolution sol = prox(f, space, PowerParams(p, eps), u);
        rows.push_back({eps, sol.envelope_value, norm(space, sub(sol.minimizer, u))});
    }
    return rows;
}

std::vector<ConvergenceRow> convergence_profile(const ConvexFn& f, const SpaceSpec& space,
                                                double p, const Vec& u,
                                                const std::vector<double>& eps_list) {
    const double fu = f.evaluate(u);
    double bound_base = 0.0;  // ||xi||_*^{p*} for the selected subgradient
    bool has_subgrad = false;
    if (fu < kInf) {
        try {
            const Vec xi = subgradient_select(f, u);
            bound_base = std::pow(dual_norm(space, xi), p / (p - 1.0));
            has_subgrad = true;
        } catch (const std::domain_error&) {
        }
    }
    const double p_star = p / (p - 1.0);
    std::vector<ConvergenceRow> rows;
    for (double eps : eps_list) {
        const ProxSolution sol = prox(f, space, PowerParams(p, eps), u);
        ConvergenceRow row;
        row.eps = eps;
        row.envelope = sol.envelope_value;
        row.value_gap = (fu < kInf) ? std::abs(sol.envelope_value - fu) : sol.envelope_value;
        row.dist = norm(space, sub(sol.minimizer, u));
        row.bound = has_subgrad ? eps / p_star * bound_base : kInf;
        rows.push_back(row);
    }
    return rows;
}

MinimalSectionResult minimal_section(const ConvexFn& f, const SpaceSpec& space,
                                     const PowerParams& params, const Vec& u,
                                     const std::vector<double>& eps_list) {
    MinimalSectionResult result;
    result.a0 = subgradient_select(f, u);  // minimal Euclidean-norm selection
    for (double eps : eps_list) {
        const ProxSolution sol = prox(f, space, PowerParams(params.p, eps), u);
        result.profile.emplace_back(eps, dual_norm(space, sub(sol.derivative, result.a0)));
    }
    return result;
}

std::pair<double, double> envelope_conjugate(const ConvexFn& f, const SpaceSpec& space,
                                             const PowerParams& params, const Vec& xi,
                                             const GridSpec& grid) {
    const double conj = f.conjugate_analytic ? f.conjugate_analytic(xi)
                                             : conjugate_numeric(f, xi, grid);
    const double analytic =
        params.eps / params.p_star * std::pow(dual_norm(space, xi), params.p_star) + conj;

    ConvexFn env;
    env.dim = f.dim;
    env.label = f.label + "_envelope";
    env.evaluate = [&f, &space, params](const Vec& v) {
        return envelope_value(f, space, params, v);
    };
    env.domain_contains = [](const Vec&) { return true; };
    const double numeric = conjugate_numeric(env, xi, grid);
    return {analytic, numeric};
}

}  // namespace pmy
