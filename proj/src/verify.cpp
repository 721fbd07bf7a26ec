#include "pmy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace pmy {

namespace {

struct Acc {
    CheckResult result;
    explicit Acc(std::string name) { result.name = std::move(name); result.passed = true; }
    void expect(bool ok, double margin, const std::string& what) {
        ++result.checks;
        result.worst = std::max(result.worst, margin);
        if (!ok && result.passed) {
            result.passed = false;
            result.detail = what;
        }
    }
    CheckResult done() && { return std::move(result); }
};

std::string describe(const std::string& what, double value) {
    std::ostringstream out;
    out << what << " (" << value << ")";
    return out.str();
}

const std::vector<double> kPSet = {1.5, 2.0, 3.0};
const std::vector<double> kEpsSet = {2.0, 1.0, 0.5, 0.1};

Vec random_vec(std::mt19937& rng, int dim, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Vec v(dim);
    for (double& x : v) x = dist(rng);
    return v;
}

// ---- criterion 1: duality-map characterization ---------------------------

CheckResult check_duality_characterization(unsigned seed) {
    Acc acc("duality_map_characterization");
    std::mt19937 rng(seed + 1);
    const std::vector<SpaceSpec> families = {
        SpaceSpec::euclidean(1), SpaceSpec::euclidean(2), SpaceSpec::euclidean(3),
        SpaceSpec::q_norm(2, 1.5), SpaceSpec::q_norm(3, 1.5),
        SpaceSpec::q_norm(2, 3.0), SpaceSpec::q_norm(3, 3.0),
        SpaceSpec::weighted_euclidean({1.0, 2.5}),
    };
    for (int i = 0; i < 1000; ++i) {
        const SpaceSpec& space = families[i % families.size()];
        const double p = kPSet[i % kPSet.size()];
        Vec v = random_vec(rng, space.dim, -2.0, 2.0);
        if (norm(space, v) < 1e-6) v[0] += 1.0;
        const Vec xi = duality_map_p(space, p, v);
        const double np = std::pow(norm(space, v), p);
        const double tol = 1e-10 * std::max(1.0, np);
        const double e1 = std::abs(dot(xi, v) - np);
        const double e2 = std::abs(std::pow(dual_norm(space, xi), p / (p - 1.0)) - np);
        acc.expect(e1 <= tol, e1 / std::max(1.0, np), describe("pairing identity", e1));
        acc.expect(e2 <= tol, e2 / std::max(1.0, np), describe("dual norm identity", e2));
    }
    return std::move(acc).done();
}

CheckResult check_duality_gradient_fd(unsigned seed) {
    Acc acc("duality_map_gradient_fd");
    std::mt19937 rng(seed + 2);
    const std::vector<SpaceSpec> families = {SpaceSpec::euclidean(2),
                                             SpaceSpec::q_norm(2, 3.0),
                                             SpaceSpec::q_norm(3, 1.5),
                                             SpaceSpec::weighted_euclidean({0.5, 2.0})};
    for (int i = 0; i < 100; ++i) {
        const SpaceSpec& space = families[i % families.size()];
        const double p = kPSet[i % kPSet.size()];
        Vec v = random_vec(rng, space.dim, -2.0, 2.0);
        for (double& x : v)
            if (std::abs(x) <= 1e-3) x = (x >= 0 ? 1.0 : -1.0) * 0.5;
        const Vec xi = duality_map_p(space, p, v);
        const double h = 1e-6 * (1.0 + norm(space, v));
        for (int a = 0; a < space.dim; ++a) {
            Vec vp = v, vm = v;
            vp[a] += h;
            vm[a] -= h;
            const double fd =
                (std::pow(norm(space, vp), p) - std::pow(norm(space, vm), p)) / (p * 2.0 * h);
            const double rel = std::abs(xi[a] - fd) / std::max(1.0, std::abs(fd));
            acc.expect(rel <= 1e-5, rel, describe("gradient mismatch", rel));
        }
    }
    return std::move(acc).done();
}

CheckResult check_duality_monotonicity(unsigned seed) {
    Acc acc("duality_map_monotonicity");
    std::mt19937 rng(seed + 3);
    const std::vector<SpaceSpec> families = {SpaceSpec::euclidean(3),
                                             SpaceSpec::q_norm(2, 1.5),
                                             SpaceSpec::q_norm(2, 3.0)};
    for (int i = 0; i < 300; ++i) {
        const SpaceSpec& space = families[i % families.size()];
        const double p = kPSet[i % kPSet.size()];
        const Vec u = random_vec(rng, space.dim, -2.0, 2.0);
        const Vec v = random_vec(rng, space.dim, -2.0, 2.0);
        const auto [lhs, rhs] = duality_monotonicity_gap(space, p, u, v);
        acc.expect(lhs >= rhs - 1e-12, rhs - lhs, describe("lhs < rhs", lhs - rhs));
        acc.expect(rhs >= -1e-12, -rhs, describe("rhs negative", rhs));
        // Hoelder
        const Vec xi = duality_map_p(space, p, v);
        const double pairing = std::abs(dot(xi, u));
        const double bound = dual_norm(space, xi) * norm(space, u) + 1e-12;
        acc.expect(pairing <= bound, pairing - bound, describe("Hoelder violated", pairing));
    }
    return std::move(acc).done();
}

// ---- criterion 2/3: Euler-Lagrange certification and assertion i ---------

CheckResult check_euler_lagrange(unsigned /*seed*/) {
    Acc acc("euler_lagrange_certification");
    for (const SweepCase& c : fixture_sweep()) {
        for (double p : kPSet) {
            for (double eps : kEpsSet) {
                try {
                    const ProxSolution sol = prox(c.fn, c.space, PowerParams(p, eps), c.u);
                    acc.expect(sol.optimality_gap <= 1e-6, sol.optimality_gap,
                               describe(c.fn.label + " optimality gap", sol.optimality_gap));
                } catch (const SolverFailure& e) {
                    acc.expect(false, e.best.optimality_gap, c.fn.label + ": " + e.what());
                }
            }
        }
    }
    // closed-form fast paths against the grid-refinement oracle
    for (const SweepCase& c : fixture_sweep()) {
        if (!c.fn.prox_closed_form || c.space.kind != NormKind::Euclidean) continue;
        if (c.fn.label == "indicator_point") continue;  // off-grid singleton domain
        const PowerParams params(2.0, 0.5);
        if (!c.fn.prox_closed_form(c.space, params, c.u)) continue;
        const ProxSolution fast = prox(c.fn, c.space, params, c.u);
        Vec lo(c.u), hi(c.u);
        for (std::size_t i = 0; i < c.u.size(); ++i) {
            lo[i] -= 6.0;
            hi[i] += 6.0;
        }
        const int ppa = (c.space.dim == 1) ? 101 : 61;
        const ProxSolution oracle =
            prox_oracle(c.fn, c.space, params, c.u, GridSpec(lo, hi, ppa), 7);
        const double dv = std::abs(fast.envelope_value - oracle.envelope_value);
        const double dm = euclidean_norm(sub(fast.minimizer, oracle.minimizer));
        acc.expect(dv <= 1e-6, dv, describe(c.fn.label + " oracle value mismatch", dv));
        acc.expect(dm <= 1e-6, dm, describe(c.fn.label + " oracle argmin mismatch", dm));
    }
    return std::move(acc).done();
}

CheckResult check_assertion_i(unsigned /*seed*/) {
    Acc acc("assertion_i_identity");
    for (const SweepCase& c : fixture_sweep()) {
        for (double p : kPSet) {
            for (double eps : kEpsSet) {
                const PowerParams params(p, eps);
                const ProxSolution sol = prox(c.fn, c.space, params, c.u);
                const double gap = assertion_i_gap(sol, c.fn, c.space, params);
                const double tol = (sol.solver == ProxSolver::ClosedForm)
                                       ? 1e-8 * (1.0 + std::abs(sol.envelope_value))
                                       : 1e-5;
                acc.expect(gap <= tol, gap, describe(c.fn.label + " assertion i gap", gap));
            }
        }
    }
    return std::move(acc).done();
}

// ---- criterion 4: sandwich and eps-monotonicity --------------------------

CheckResult check_sandwich(unsigned /*seed*/) {
    Acc acc("sandwich_eps_monotonicity");
    for (const SweepCase& c : fixture_sweep()) {
        for (double p : kPSet) {
            const double fu = c.fn.evaluate(c.u);
            std::vector<ProxSolution> sols;
            for (double eps : kEpsSet) sols.push_back(prox(c.fn, c.space, PowerParams(p, eps), c.u));
            for (std::size_t i = 0; i < sols.size(); ++i) {
                const double fe = sols[i].envelope_value;
                const double fmin = c.fn.evaluate(sols[i].minimizer);
                acc.expect(fmin <= fe + 1e-9, fmin - fe, "f(u_eps) > f_eps(u)");
                if (fu < kInf) acc.expect(fe <= fu + 1e-9, fe - fu, "f_eps(u) > f(u)");
                if (i > 0) {
                    acc.expect(fe >= sols[i - 1].envelope_value - 1e-9,
                               sols[i - 1].envelope_value - fe,
                               c.fn.label + ": envelope not monotone in eps");
                    const double d0 = norm(c.space, sub(sols[i - 1].minimizer, c.u));
                    const double d1 = norm(c.space, sub(sols[i].minimizer, c.u));
                    acc.expect(d1 <= d0 + 1e-9, d1 - d0,
                               c.fn.label + ": ||u_eps - u|| not monotone in eps");
                }
            }
        }
    }
    return std::move(acc).done();
}

// ---- criterion 5: value convergence bound and divergence -----------------

CheckResult check_value_convergence(unsigned /*seed*/) {
    Acc acc("value_convergence_bound");
    for (const SweepCase& c : fixture_sweep()) {
        const double fu = c.fn.evaluate(c.u);
        if (fu == kInf) continue;
        Vec xi;
        try {
            xi = subgradient_select(c.fn, c.u);
        } catch (const std::domain_error&) {
            continue;
        }
        for (double p : kPSet) {
            const double p_star = p / (p - 1.0);
            const double base = std::pow(dual_norm(c.space, xi), p_star);
            for (double eps : kEpsSet) {
                const double fe = envelope_value(c.fn, c.space, PowerParams(p, eps), c.u);
                const double gap = fu - fe;
                const double bound = eps / p_star * base;
                acc.expect(gap <= bound + 1e-9, gap - bound,
                           describe(c.fn.label + " Young bound violated", gap - bound));
            }
        }
    }
    // one_norm achieves the bound with equality (p = 2, |u| > eps)
    {
        const SpaceSpec e1 = SpaceSpec::euclidean(1);
        const ConvexFn f = one_norm(1);
        for (double eps : kEpsSet) {
            const double fe = envelope_value(f, e1, PowerParams(2.0, eps), {3.0});
            const double mismatch = std::abs((3.0 - fe) - eps / 2.0);
            acc.expect(mismatch <= 1e-10, mismatch, "one_norm equality case");
        }
    }
    // indicator fixtures blow up: f_eps(u) > 1e3 by eps = 1e-3
    {
        const SpaceSpec e1 = SpaceSpec::euclidean(1);
        const std::vector<std::pair<double, double>> pu = {{1.5, 20.0}, {2.0, 2.0}, {3.0, 2.0}};
        for (const auto& [p, u] : pu) {
            const double v_pt =
                envelope_value(indicator_point({0.0}), e1, PowerParams(p, 1e-3), {u});
            acc.expect(v_pt > 1e3, 1e3 - v_pt, describe("indicator_point divergence", v_pt));
            const double v_box = envelope_value(indicator_box({-1.0}, {1.0}), e1,
                                                PowerParams(p, 1e-3), {u + 1.0});
            acc.expect(v_box > 1e3, 1e3 - v_box, describe("indicator_box divergence", v_box));
        }
    }
    return std::move(acc).done();
}

// ---- criterion 6: eps-derivative vs finite differences -------------------

CheckResult check_eps_derivative(unsigned /*seed*/) {
    Acc acc("eps_derivative_fd");
    const SpaceSpec e1 = SpaceSpec::euclidean(1);
    const std::vector<std::pair<ConvexFn, double>> fixtures = {
        {one_norm(1), 3.0},
        {quadratic_1d(1.0), 2.0},
        {indicator_point({0.0}), 2.0},
        {indicator_box({-1.0}, {1.0}), 3.0},
        {power_of_norm(2.5, e1), 1.3},
        {max_affine({{{1.0}, 0.0}, {{2.0}, 0.0}}), 1.5},
    };
    for (const auto& [f, u] : fixtures) {
        for (double p : kPSet) {
            for (double eps : {1.0, 0.5, 0.1}) {
                const double analytic = eps_derivative(f, e1, p, {u}, eps);
                if (std::abs(analytic) < 1e-12) continue;
                const double h = 1e-4 * eps;
                const double fd = (envelope_value(f, e1, PowerParams(p, eps + h), {u}) -
                                   envelope_value(f, e1, PowerParams(p, eps - h), {u})) /
                                  (2.0 * h);
                const double rel = std::abs(analytic - fd) / std::abs(analytic);
                acc.expect(rel <= 1e-3, rel, describe(f.label + " d/deps mismatch", rel));
            }
        }
    }
    return std::move(acc).done();
}

// ---- criterion 7: Gateaux directional derivative -------------------------

CheckResult check_gateaux(unsigned /*seed*/) {
    Acc acc("gateaux_directional");
    const SpaceSpec e1 = SpaceSpec::euclidean(1);
    const SpaceSpec e2 = SpaceSpec::euclidean(2);
    const std::vector<std::pair<ConvexFn, Vec>> fixtures_1d = {
        {one_norm(1), {3.0}},
        {quadratic_1d(1.0), {2.0}},
        {indicator_point({0.0}), {2.0}},
        {indicator_box({-1.0}, {1.0}), {2.0}},
        {power_of_norm(2.5, e1), {1.3}},
        {max_affine({{{1.0}, 0.0}, {{2.0}, 0.0}}), {1.5}},
    };
    const std::vector<std::pair<ConvexFn, Vec>> fixtures_2d = {
        {one_norm(2), {3.0, -1.0}},
        {quadratic({{2.0, 0.5}, {0.5, 1.0}}, {0.1, -0.2}, 0.0), {1.0, 1.0}},
        {power_of_norm(3.0, e2), {0.8, -0.5}},
        {indicator_box({-1.0, -1.0}, {1.0, 1.0}), {2.0, 0.5}},
    };
    const std::vector<Vec> dirs_2d = {{1.0, 0.0},  {0.0, 1.0},  {0.6, 0.8},
                                      {-0.8, 0.6}, {0.28, -0.96}, {-0.96, -0.28}};
    auto run = [&](const ConvexFn& f, const SpaceSpec& space, const Vec& u, const Vec& w,
                   double p) {
        const auto [analytic, numeric] =
            gateaux_directional_check(f, space, PowerParams(p, 0.7), u, w);
        const double err = std::abs(analytic - numeric);
        const double tol = 1e-4 * (1.0 + std::abs(analytic));
        acc.expect(err <= tol, err, describe(f.label + " directional mismatch", err));
    };
    for (const auto& [f, u] : fixtures_1d)
        for (double p : kPSet)
            for (double d : {1.0, -1.0}) run(f, e1, u, {d}, p);
    for (const auto& [f, u] : fixtures_2d)
        for (double p : kPSet)
            for (const Vec& w : dirs_2d) run(f, e2, u, w, p);
    return std::move(acc).done();
}

// ---- criterion 8: minimal section ----------------------------------------

CheckResult check_minimal_section(unsigned /*seed*/) {
    Acc acc("minimal_section");
    const SpaceSpec e1 = SpaceSpec::euclidean(1);
    const std::vector<double> eps_list = {1.0, 0.5, 0.1, 1e-2, 1e-4};
    {
        const auto r = minimal_section(one_norm(1), e1, PowerParams(2.0, 1.0), {2.0}, eps_list);
        acc.expect(std::abs(r.a0[0] - 1.0) <= 1e-12, std::abs(r.a0[0] - 1.0), "one_norm A0");
        acc.expect(r.profile.back().second <= 1e-6, r.profile.back().second,
                   describe("one_norm minimal-section distance", r.profile.back().second));
    }
    {
        const ConvexFn f = max_affine({{{1.0}, 0.0}, {{2.0}, 0.0}});
        const auto r = minimal_section(f, e1, PowerParams(2.0, 1.0), {0.0}, eps_list);
        acc.expect(std::abs(r.a0[0] - 1.0) <= 1e-9, std::abs(r.a0[0] - 1.0), "max_affine A0");
        acc.expect(r.profile.back().second <= 1e-6, r.profile.back().second,
                   describe("max_affine minimal-section distance", r.profile.back().second));
        for (const auto& [eps, dist] : r.profile)
            acc.expect(dist <= r.profile.front().second + 1e-6, dist,
                       "max_affine profile diverges");
    }
    // symmetric fixtures: A_eps(0) = 0 exactly
    for (const ConvexFn& f : {one_norm(1), quadratic_1d(1.0)}) {
        for (double eps : kEpsSet) {
            const ProxSolution sol = prox(f, e1, PowerParams(2.0, eps), {0.0});
            acc.expect(sol.derivative[0] == 0.0, std::abs(sol.derivative[0]),
                       f.label + ": A_eps(0) != 0");
        }
    }
    return std::move(acc).done();
}

// ---- criterion 9: conjugate formula --------------------------------------

CheckResult check_conjugate_formula(unsigned /*seed*/) {
    Acc acc("conjugate_formula");
    const SpaceSpec e1 = SpaceSpec::euclidean(1);
    struct Pair {
        ConvexFn f;
        double p, eps, xi;
        double half_width;
        int ppa;
    };
    std::vector<Pair> pairs;
    for (double p : {2.0, 3.0})
        for (double eps : {1.0, 0.5})
            for (double xi : {1.0, -0.7, 0.3})
                pairs.push_back({quadratic_1d(1.0), p, eps, xi, 15.0, 3001});
    for (double eps : {1.0, 0.5})
        for (double xi : {0.5, -0.3, 0.8})
            pairs.push_back({one_norm(1), 2.0, eps, xi, 20.0, 2001});
    for (double xi : {1.5, -2.0})
        pairs.push_back({indicator_box({-1.0}, {1.0}), 2.0, 1.0, xi, 10.0, 2001});
    for (double p : {2.0, 3.0})
        for (double xi : {1.0, -1.0})
            pairs.push_back({indicator_point({0.0}), p, 1.0, xi, 10.0, 2001});
    for (double xi : {1.0, -2.0})
        pairs.push_back({power_of_norm(2.5, e1), 2.0, 0.5, xi, 12.0, 2401});
    for (double xi : {0.5, -0.5}) {
        pairs.push_back({quadratic_1d(1.0), 1.5, 1.0, xi, 15.0, 3001});
        pairs.push_back({one_norm(1), 3.0, 1.0, xi, 20.0, 2001});
    }
    for (const Pair& c : pairs) {
        const GridSpec grid({-c.half_width}, {c.half_width}, c.ppa);
        const auto [analytic, numeric] =
            envelope_conjugate(c.f, e1, PowerParams(c.p, c.eps), {c.xi}, grid);
        const double tol = 2.0 * grid.step(0) * (1.0 + std::abs(c.xi)) + 1e-6;
        const double err = std::abs(analytic - numeric);
        acc.expect(err <= tol, err, describe(c.f.label + " conjugate gap", err));
    }
    // scalar identity ((1/(p eps^{p-1})) |.|^p)* = (eps/p*) |.|^{p*}
    for (double p : kPSet) {
        const double p_star = p / (p - 1.0);
        for (double eps : {0.5, 1.0, 2.0}) {
            for (double xi = -3.0; xi <= 3.0 + 1e-12; xi += 0.5) {
                const double scale_f = 1.0 / (p * std::pow(eps, p - 1.0));
                auto neg_obj = [&](double v) {
                    return xi * v - scale_f * std::pow(std::abs(v), p);
                };
                double a = -(eps * std::pow(std::abs(xi) + 1.0, 2.0) + 1.0), b = -a;
                for (int it = 0; it < 400; ++it) {
                    const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
                    if (neg_obj(m1) >= neg_obj(m2))
                        b = m2;
                    else
                        a = m1;
                }
                const double numeric = neg_obj(0.5 * (a + b));
                const double analytic = eps / p_star * std::pow(std::abs(xi), p_star);
                const double err = std::abs(numeric - analytic);
                acc.expect(err <= 1e-8, err, describe("scalar conjugate identity", err));
            }
        }
    }
    return std::move(acc).done();
}

// ---- criterion 10: Mosco suite -------------------------------------------

CheckResult check_mosco(unsigned /*seed*/) {
    Acc acc("mosco_suite");
    const SpaceSpec e1 = SpaceSpec::euclidean(1);
    const int n_max = 64;
    for (const FunctionSequence& seq : mosco_fixtures()) {
        const bool indicator = seq.label == "indicator_point" || seq.label == "shrinking_box";
        const GridSpec grid = indicator && seq.label == "indicator_point"
                                  ? GridSpec({-2.0}, {2.0}, 5)
                                  : GridSpec({-2.0}, {2.0}, 81);
        const MoscoReport li = liminf_check(seq, grid, n_max, 1e-6);
        acc.expect(li.violations() == 0, li.violations(),
                   seq.label + ": liminf violations");
        const MoscoReport re = recovery_check(seq, grid, n_max, 1e-6);
        acc.expect(re.violations() == 0, re.violations(),
                   seq.label + ": recovery violations");
    }
    // envelope preservation at fixed eps
    for (const FunctionSequence& seq :
         {shifted_one_norm_sequence(), scaled_quadratic_sequence(),
          converging_max_affine_sequence()}) {
        const auto rows =
            envelope_preserves(seq, e1, PowerParams(2.0, 1.0), GridSpec({-2.0}, {2.0}, 41), n_max);
        acc.expect(rows.back().sup_gap <= 2.0 / n_max, rows.back().sup_gap,
                   describe(seq.label + ": envelope sup-gap", rows.back().sup_gap));
        // eventually decreasing (monotone after burn-in)
        bool monotone = true;
        for (std::size_t i = n_max / 2; i + 1 < rows.size(); ++i)
            if (rows[i + 1].sup_gap > rows[i].sup_gap + 1e-12) monotone = false;
        acc.expect(monotone, 0.0, seq.label + ": envelope gap not eventually decreasing");
    }
    // diagonal convergence with eps_n = 1/n^2
    const auto schedule = [](int n) { return 1.0 / (static_cast<double>(n) * n); };
    for (const FunctionSequence& seq : {shifted_one_norm_sequence()}) {
        const auto rep = diagonal_convergence(seq, e1, 2.0, schedule,
                                              GridSpec({-2.0}, {2.0}, 41), n_max);
        const double allowed = 1.0 / n_max + schedule(n_max);
        acc.expect(rep.sup_gap.back().sup_gap <= allowed, rep.sup_gap.back().sup_gap,
                   describe(seq.label + ": diagonal sup-gap", rep.sup_gap.back().sup_gap));
    }
    for (const FunctionSequence& seq :
         {scaled_quadratic_sequence(), converging_max_affine_sequence()}) {
        const auto rep = diagonal_convergence(seq, e1, 2.0, schedule,
                                              GridSpec({-1.0}, {1.0}, 21), n_max);
        const double allowed = 1.0 / n_max + schedule(n_max);
        acc.expect(rep.sup_gap.back().sup_gap <= allowed, rep.sup_gap.back().sup_gap,
                   describe(seq.label + ": diagonal sup-gap", rep.sup_gap.back().sup_gap));
    }
    for (const FunctionSequence& seq : {indicator_point_sequence(), shrinking_box_sequence()}) {
        const auto rep =
            diagonal_convergence(seq, e1, 2.0, schedule, GridSpec({-2.0}, {2.0}, 5), n_max);
        acc.expect(!rep.divergence_min.empty() && rep.divergence_min.back().sup_gap > 1e3,
                   rep.divergence_min.empty() ? 0.0 : rep.divergence_min.back().sup_gap,
                   seq.label + ": indicator branch did not diverge past 1e3");
    }
    return std::move(acc).done();
}

// ---- criterion 11: Hamilton-Jacobi residual ------------------------------

CheckResult check_hj(unsigned /*seed*/) {
    Acc acc("hj_residual");
    const SpaceSpec e1 = SpaceSpec::euclidean(1);
    for (double h : {0.05, 0.025}) {
        const int nx = static_cast<int>(std::lround(4.0 / h)) + 1;
        std::vector<double> ts;
        for (double t = 0.5; t <= 1.5 + 1e-12; t += h) ts.push_back(t);
        const SpaceTimeField field =
            lax_oleinik(quadratic_1d(1.0), e1, 2.0, GridSpec({-2.0}, {2.0}, nx), ts);
        const HjResidual r = hj_residual(field, e1, 2.0);
        acc.expect(r.max_residual <= 5.0 * h * h, r.max_residual,
                   describe("quadratic residual at h", r.max_residual));
        acc.expect(r.interior_count > 0, 0.0, "no interior nodes");
    }
    {
        const double h = 0.05;
        std::vector<double> ts;
        for (double t = 0.5; t <= 1.5 + 1e-12; t += h) ts.push_back(t);
        const SpaceTimeField field =
            lax_oleinik(one_norm(1), e1, 2.0, GridSpec({-2.0}, {2.0}, 81), ts);
        const HjResidual r = hj_residual(field, e1, 2.0);
        acc.expect(r.max_residual <= 3.0 * h, r.max_residual,
                   describe("one_norm residual", r.max_residual));
    }
    // semigroup and t-monotonicity at desk scale
    {
        const ConvexFn f = one_norm(1);
        for (double t : {0.25, 0.5}) {
            for (double s : {0.25, 0.5}) {
                for (double x : {-1.5, 0.3, 2.0}) {
                    const double direct = envelope_value(f, e1, PowerParams(2.0, t + s), {x});
                    ConvexFn ft;
                    ft.dim = 1;
                    ft.label = "f_t";
                    ft.evaluate = [&f, &e1, t](const Vec& v) {
                        return envelope_value(f, e1, PowerParams(2.0, t), v);
                    };
                    ft.domain_contains = [](const Vec&) { return true; };
                    ft.project_domain = [](const Vec& v) { return v; };
                    // d/dv of the Moreau envelope is available in closed form
                    ft.subgradient = [&f, &e1, t](const Vec& v) {
                        return prox(f, e1, PowerParams(2.0, t), v).derivative;
                    };
                    ft.sample_domain = [](std::mt19937& rng) {
                        std::uniform_real_distribution<double> d(-3.0, 3.0);
                        return Vec{d(rng)};
                    };
                    const double composed = envelope_value(ft, e1, PowerParams(2.0, s), {x});
                    const double err = std::abs(direct - composed);
                    acc.expect(err <= 1e-6, err, describe("semigroup property", err));
                }
            }
        }
        for (double x : {-1.5, 0.3, 2.0}) {
            double prev = kInf;
            for (double t : {0.25, 0.5, 1.0, 2.0}) {
                const double val = envelope_value(f, e1, PowerParams(2.0, t), {x});
                acc.expect(val <= prev + 1e-9, val - prev, "f_t not non-increasing in t");
                prev = val;
            }
        }
    }
    return std::move(acc).done();
}

// ---- criterion 12: minimizing movement and exponential formula -----------

CheckResult check_flow(unsigned seed) {
    Acc acc("flow_scheme");
    const SpaceSpec e1 = SpaceSpec::euclidean(1);
    const ConvexFn quad = quadratic_1d(1.0);
    // first-order convergence against the fine integrator
    for (double p : {2.0, 3.0}) {
        const auto coarse = ode_reference_error(quad, p, 0.1, 10, {1.0});
        const auto fine = ode_reference_error(quad, p, 0.05, 20, {1.0});
        double ec = 0.0, ef = 0.0;
        for (const auto& row : coarse) ec = std::max(ec, row.error);
        for (const auto& row : fine) ef = std::max(ef, row.error);
        const double ratio = ec / ef;
        acc.expect(ratio >= 1.6 && ratio <= 2.4, ratio,
                   describe("implicit Euler error ratio", ratio));
    }
    // exponential formula
    {
        const auto rows = exponential_formula_check(quad, e1, 1.0, {16, 64, 256, 1024}, {1.0});
        for (std::size_t i = 1; i < rows.size(); ++i)
            acc.expect(rows[i].error < rows[i - 1].error, rows[i].error,
                       "exponential formula error not decreasing");
        acc.expect(rows.back().error <= 5e-4, rows.back().error,
                   describe("exponential formula error at n=1024", rows.back().error));
        const double scalar = std::abs(std::pow(1.0 + 1.0 / 1024.0, -1024.0) - std::exp(-1.0));
        acc.expect(std::abs(rows.back().error - scalar) <= 1e-12,
                   std::abs(rows.back().error - scalar), "scalar identity mismatch");
    }
    // dissipation inequality and smoothing on the shipped trajectories
    {
        struct TrajCase {
            ConvexFn energy;
            double p, tau;
            int steps;
            Vec u0;
        };
        const std::vector<TrajCase> cases = {
            {quadratic_1d(1.0), 2.0, 0.1, 10, {1.0}},
            {quadratic_1d(1.0), 3.0, 0.1, 10, {1.0}},
            {one_norm(1), 2.0, 0.3, 6, {1.0}},
            {one_norm(1), 2.0, 0.3, 4, {0.0}},  // u0 at the kink
            {indicator_box({-1.0}, {1.0}), 2.0, 0.2, 5, {0.7}},
        };
        for (const TrajCase& c : cases) {
            const FlowTrajectory traj =
                minimizing_movement(c.energy, e1, c.p, c.tau, c.steps, c.u0);
            for (std::size_t n = 1; n < traj.states.size(); ++n) {
                const double d = norm(e1, sub(traj.states[n], traj.states[n - 1]));
                const double lhs = traj.energies[n] + std::pow(d, c.p) /
                                                          (c.p * std::pow(c.tau, c.p - 1.0));
                acc.expect(lhs <= traj.energies[n - 1] + 1e-9, lhs - traj.energies[n - 1],
                           c.energy.label + ": dissipation inequality violated");
                acc.expect(traj.residuals[n] <= 1e-6, traj.residuals[n],
                           c.energy.label + ": step not certified");
            }
        }
        // soft-threshold trajectory hits 0 in finite time and stays
        const FlowTrajectory traj = minimizing_movement(one_norm(1), e1, 2.0, 0.3, 6, {1.0});
        acc.expect(std::abs(traj.states.back()[0]) <= 1e-12,
                   std::abs(traj.states.back()[0]), "one_norm flow not absorbed at 0");
    }
    // resolvent nonexpansiveness for p = 2
    {
        std::mt19937 rng(seed + 12);
        std::uniform_real_distribution<double> dist(-3.0, 3.0);
        const PowerParams params(2.0, 0.5);
        for (const ConvexFn& f : {one_norm(1), quadratic_1d(2.0, 0.3)}) {
            for (int i = 0; i < 50; ++i) {
                const Vec a = {dist(rng)}, b = {dist(rng)};
                const Vec ja = prox(f, e1, params, a).minimizer;
                const Vec jb = prox(f, e1, params, b).minimizer;
                const double lhs = euclidean_norm(sub(ja, jb));
                const double rhs = euclidean_norm(sub(a, b));
                acc.expect(lhs <= rhs + 1e-9, lhs - rhs, "resolvent expansion");
            }
        }
    }
    return std::move(acc).done();
}

// ---- additional module invariants ----------------------------------------

CheckResult check_catalog_convexity(unsigned seed) {
    Acc acc("catalog_convexity");
    const SpaceSpec e2 = SpaceSpec::euclidean(2);
    const std::vector<ConvexFn> catalog = {
        one_norm(1),
        one_norm(2),
        quadratic_1d(1.0),
        quadratic({{2.0, 0.5}, {0.5, 1.0}}, {0.1, -0.2}, 0.3),
        indicator_box({-1.0, -1.0}, {1.0, 1.0}),
        indicator_point({0.5}),
        max_affine({{{1.0}, 0.0}, {{2.0}, 0.0}, {{-1.0}, 0.5}}),
        power_of_norm(2.5, e2),
        power_of_norm(1.0, e2),
        zero_fn(1),
    };
    for (const ConvexFn& f : catalog) {
        const ConvexityReport r = validate_convexity(f, 200, seed + 20);
        acc.expect(r.ok(), r.violations.size(),
                   f.label + ": " + std::to_string(r.violations.size()) + " violations");
    }
    // a deliberately non-convex probe must be flagged
    ConvexFn probe;
    probe.dim = 1;
    probe.label = "negative_curvature_probe";
    probe.evaluate = [](const Vec& v) { return -v[0] * v[0]; };
    probe.subgradient = [](const Vec& v) { return Vec{-2.0 * v[0]}; };
    probe.domain_contains = [](const Vec&) { return true; };
    probe.project_domain = [](const Vec& v) { return v; };
    probe.sample_domain = [](std::mt19937& rng) {
        std::uniform_real_distribution<double> d(-3.0, 3.0);
        return Vec{d(rng)};
    };
    const ConvexityReport r = validate_convexity(probe, 200, seed + 21);
    acc.expect(!r.ok(), r.violations.size(), "non-convex probe not flagged");
    return std::move(acc).done();
}

CheckResult check_fenchel_young(unsigned seed) {
    Acc acc("fenchel_young");
    std::mt19937 rng(seed + 30);
    std::uniform_real_distribution<double> dist(-2.5, 2.5);
    const SpaceSpec e1 = SpaceSpec::euclidean(1);
    const std::vector<ConvexFn> members = {quadratic_1d(1.0), one_norm(1),
                                           indicator_box({-1.0}, {1.0}),
                                           indicator_point({0.5}), power_of_norm(2.5, e1)};
    for (const ConvexFn& f : members) {
        for (int i = 0; i < 100; ++i) {
            const Vec v = f.sample_domain(rng);
            const Vec xi = {dist(rng)};
            const double fv = f.evaluate(v), fc = f.conjugate_analytic(xi);
            if (fv == kInf || fc == kInf) continue;
            const double slack = fv + fc - dot(xi, v);
            acc.expect(slack >= -1e-9, -slack, f.label + ": Fenchel-Young violated");
        }
    }
    // equality at xi = grad f(v) for differentiable members
    for (const ConvexFn& f : {quadratic_1d(1.0), power_of_norm(2.5, e1)}) {
        for (int i = 0; i < 50; ++i) {
            const Vec v = {dist(rng)};
            const Vec g = subgradient_select(f, v);
            const double residual = std::abs(f.evaluate(v) + f.conjugate_analytic(g) - dot(g, v));
            acc.expect(residual <= 1e-8, residual, f.label + ": Fenchel-Young equality");
        }
    }
    // numeric conjugate agrees with the analytic one
    for (const ConvexFn& f : {quadratic_1d(1.0), one_norm(1)}) {
        for (double xi : {0.9, -0.5, 0.2}) {
            const GridSpec grid({-10.0}, {10.0}, 4001);
            const double numeric = conjugate_numeric(f, {xi}, grid);
            const double tol = 2.0 * grid.step(0) * (1.0 + std::abs(xi));
            const double err = std::abs(numeric - f.conjugate_analytic({xi}));
            acc.expect(err <= tol, err, f.label + ": numeric conjugate mismatch");
        }
    }
    return std::move(acc).done();
}

CheckResult check_envelope_regularity(unsigned seed) {
    Acc acc("envelope_regularity");
    std::mt19937 rng(seed + 40);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    const SpaceSpec e1 = SpaceSpec::euclidean(1);
    const PowerParams params(2.0, 0.5);
    // midpoint convexity of the envelope
    for (int i = 0; i < 200; ++i) {
        const Vec a = {dist(rng)}, b = {dist(rng)};
        const Vec m = scale(0.5, add(a, b));
        const double lhs = envelope_value(one_norm(1), e1, params, m);
        const double rhs = 0.5 * envelope_value(one_norm(1), e1, params, a) +
                           0.5 * envelope_value(one_norm(1), e1, params, b);
        acc.expect(lhs <= rhs + 1e-8, lhs - rhs, "envelope midpoint convexity");
    }
    // strict convexity inheritance for positive definite quadratics
    {
        const ConvexFn f = quadratic_1d(1.0);
        for (int i = 0; i < 50; ++i) {
            Vec a = {dist(rng)}, b = {dist(rng)};
            if (std::abs(a[0] - b[0]) < 0.1) b[0] = a[0] + 0.5;
            const Vec m = scale(0.5, add(a, b));
            const double lhs = envelope_value(f, e1, params, m);
            const double rhs = 0.5 * envelope_value(f, e1, params, a) +
                               0.5 * envelope_value(f, e1, params, b);
            acc.expect(rhs - lhs > 0.0, lhs - rhs, "strict midpoint inequality");
        }
    }
    // A_eps(u) is a subgradient of the envelope
    for (int i = 0; i < 20; ++i) {
        const Vec u = {dist(rng)};
        const ProxSolution sol = prox(one_norm(1), e1, params, u);
        for (double d : {1.0, -1.0}) {
            for (double r : {1e-2, 0.1, 1.0, 2.0}) {
                const Vec w = {u[0] + d * r};
                const double fw = envelope_value(one_norm(1), e1, params, w);
                const double lower =
                    sol.envelope_value + sol.derivative[0] * (w[0] - u[0]) - 1e-8;
                acc.expect(fw >= lower, lower - fw, "A_eps not in the envelope subdifferential");
            }
        }
    }
    // local Lipschitz bound from the derivative
    {
        double max_dual = 0.0;
        std::vector<std::pair<Vec, double>> samples;
        for (int i = 0; i < 40; ++i) {
            const Vec u = {dist(rng)};
            const ProxSolution sol = prox(one_norm(1), e1, params, u);
            max_dual = std::max(max_dual, dual_norm(e1, sol.derivative));
            samples.emplace_back(u, sol.envelope_value);
        }
        for (std::size_t i = 1; i < samples.size(); ++i) {
            const double dv = std::abs(samples[i].second - samples[i - 1].second);
            const double du = euclidean_norm(sub(samples[i].first, samples[i - 1].first));
            acc.expect(dv <= (max_dual + 1e-6) * du + 1e-9, dv - max_dual * du,
                       "local Lipschitz bound violated");
        }
    }
    // continuity of A_eps along approach sequences
    for (int i = 0; i < 20; ++i) {
        const Vec u = {dist(rng)};
        const Vec d = {(i % 2 == 0) ? 1.0 : -1.0};
        const double base = dual_norm(
            e1, sub(prox(one_norm(1), e1, params, add(u, scale(0.5, d))).derivative,
                    prox(one_norm(1), e1, params, u).derivative));
        const double close = dual_norm(
            e1, sub(prox(one_norm(1), e1, params, add(u, scale(1e-6, d))).derivative,
                    prox(one_norm(1), e1, params, u).derivative));
        acc.expect(close <= base + 1e-9 && close <= 1e-4, close, "A_eps continuity");
    }
    return std::move(acc).done();
}

CheckResult check_oracle(unsigned /*seed*/) {
    Acc acc("oracle_grid");
    // vertex-on-grid cases
    {
        const GridResult r =
            grid_minimize([](const Vec& v) { return (v[0] - 2.0) * (v[0] - 2.0); },
                          GridSpec({0.0}, {4.0}, 401));
        acc.expect(std::abs(r.argmin[0] - 2.0) <= 1e-12 && r.min <= 1e-24,
                   std::abs(r.argmin[0] - 2.0), "quadratic vertex");
    }
    // determinism (bit-identical reruns)
    {
        auto obj = [](const Vec& v) { return std::abs(v[0] - 1.234567); };
        const GridSpec g({-5.0}, {5.0}, 777);
        const GridResult a = grid_refine(obj, g, 4);
        const GridResult b = grid_refine(obj, g, 4);
        acc.expect(a.argmin[0] == b.argmin[0] && a.min == b.min, 0.0,
                   "oracle not deterministic");
    }
    // monotone refinement
    {
        auto obj = [](const Vec& v) { return std::abs(v[0] - M_PI); };
        double prev = kInf;
        for (int rounds = 1; rounds <= 6; ++rounds) {
            const GridResult r = grid_refine(obj, GridSpec({0.0}, {10.0}, 101), rounds);
            acc.expect(r.min <= prev + 1e-15, r.min - prev, "refinement not monotone");
            prev = r.min;
        }
        const GridResult r = grid_refine(obj, GridSpec({0.0}, {10.0}, 101), 6);
        acc.expect(std::abs(r.argmin[0] - M_PI) <= 1e-6, std::abs(r.argmin[0] - M_PI),
                   "pi localization");
    }
    return std::move(acc).done();
}

CheckResult check_superlinearity(unsigned /*seed*/) {
    Acc acc("superlinearity");
    const SpaceSpec e1 = SpaceSpec::euclidean(1);
    {
        const auto rows = superlinearity_profile(quadratic_1d(1.0), e1, 2.0, {0.25, 0.5, 1.0},
                                                 {2.0, 4.0, 8.0, 12.0});
        for (std::size_t i = 1; i < rows.size(); ++i)
            acc.expect(rows[i].min_ratio > rows[i - 1].min_ratio,
                       rows[i - 1].min_ratio - rows[i].min_ratio, "ratio not increasing");
        // envelope R^2/(2(1+eps)) gives ratio R/(2(1+eps)) = 3 at R=12, eps=1
        acc.expect(rows.back().min_ratio >= 2.5, rows.back().min_ratio,
                   describe("quadratic ratio too small", rows.back().min_ratio));
    }
    {
        const auto rows = superlinearity_profile(power_of_norm(3.0, e1), e1, 2.0, {0.5, 1.0},
                                                 {2.0, 4.0, 8.0});
        for (std::size_t i = 1; i < rows.size(); ++i)
            acc.expect(rows[i].min_ratio > 2.0 * rows[i - 1].min_ratio, 0.0,
                       "cubic growth not superlinear");
    }
    {
        // small radius: ratio near 0 when f(0) = 0
        const auto rows =
            superlinearity_profile(quadratic_1d(1.0), e1, 2.0, {0.5, 1.0}, {0.1});
        acc.expect(rows.front().min_ratio <= 0.05, rows.front().min_ratio, "small-R ratio");
    }
    // conjugate superlinearity: (eps/p*)||xi||^{p*-1} + f*(xi)/||xi|| diverges
    for (const ConvexFn& f : {quadratic_1d(1.0), power_of_norm(2.5, e1)}) {
        double prev = 0.0;
        for (double xi : {10.0, 100.0, 1000.0}) {
            const double ratio = 0.5 / 2.0 * std::pow(xi, 2.0 - 1.0) +
                                 f.conjugate_analytic({xi}) / xi;
            acc.expect(ratio > 2.0 * prev, prev - ratio, "conjugate ratio not diverging");
            prev = ratio;
        }
    }
    return std::move(acc).done();
}

}  // namespace

std::vector<SweepCase> fixture_sweep() {
    const SpaceSpec e1 = SpaceSpec::euclidean(1);
    const SpaceSpec e2 = SpaceSpec::euclidean(2);
    const SpaceSpec q3 = SpaceSpec::q_norm(2, 3.0);
    const SpaceSpec q15 = SpaceSpec::q_norm(2, 1.5);
    const SpaceSpec we = SpaceSpec::weighted_euclidean({1.0, 2.0});
    std::vector<SweepCase> cases;
    auto push = [&](ConvexFn f, const SpaceSpec& s, Vec u) {
        cases.push_back({std::move(f), s, std::move(u)});
    };
    push(one_norm(1), e1, {3.0});
    push(one_norm(1), e1, {-1.2});
    push(one_norm(1), e1, {0.0});
    push(quadratic_1d(1.0), e1, {2.0});
    push(quadratic_1d(1.0), e1, {-0.7});
    push(quadratic_1d(2.0, 0.3), e1, {1.1});
    push(indicator_box({-1.0}, {1.0}), e1, {2.0});
    push(indicator_box({-1.0}, {1.0}), e1, {0.4});
    push(indicator_point({0.0}), e1, {2.0});
    push(max_affine({{{1.0}, 0.0}, {{2.0}, 0.0}}), e1, {0.0});
    push(max_affine({{{1.0}, 0.0}, {{2.0}, 0.0}}), e1, {1.5});
    push(max_affine({{{1.0}, 0.0}, {{2.0}, 0.0}}), e1, {-1.5});
    push(power_of_norm(2.5, e1), e1, {1.3});
    push(zero_fn(1), e1, {0.8});
    push(one_norm(2), e2, {3.0, -1.0});
    push(quadratic({{2.0, 0.5}, {0.5, 1.0}}, {0.1, -0.2}, 0.0), e2, {1.0, 1.0});
    push(power_of_norm(3.0, e2), e2, {0.8, -0.5});
    push(indicator_box({-1.0, -1.0}, {1.0, 1.0}), e2, {2.0, 0.5});
    push(power_of_norm(2.5, q3), q3, {1.0, 0.5});
    push(quadratic({{1.0, 0.0}, {0.0, 1.0}}, {0.0, 0.0}, 0.0), q3, {0.9, -0.4});
    push(power_of_norm(3.0, q15), q15, {0.7, 0.6});
    push(quadratic({{1.0, 0.0}, {0.0, 1.0}}, {0.0, 0.0}, 0.0), we, {1.2, 0.3});
    return cases;
}

VerificationReport run_verification(unsigned seed) {
    VerificationReport report;
    report.seed = seed;
    using Check = CheckResult (*)(unsigned);
    const std::vector<std::pair<const char*, Check>> checks = {
        {"duality_map_characterization", check_duality_characterization},
        {"duality_map_gradient_fd", check_duality_gradient_fd},
        {"duality_map_monotonicity", check_duality_monotonicity},
        {"catalog_convexity", check_catalog_convexity},
        {"fenchel_young", check_fenchel_young},
        {"oracle_grid", check_oracle},
        {"euler_lagrange_certification", check_euler_lagrange},
        {"assertion_i_identity", check_assertion_i},
        {"sandwich_eps_monotonicity", check_sandwich},
        {"value_convergence_bound", check_value_convergence},
        {"eps_derivative_fd", check_eps_derivative},
        {"gateaux_directional", check_gateaux},
        {"minimal_section", check_minimal_section},
        {"conjugate_formula", check_conjugate_formula},
        {"envelope_regularity", check_envelope_regularity},
        {"mosco_suite", check_mosco},
        {"superlinearity", check_superlinearity},
        {"hj_residual", check_hj},
        {"flow_scheme", check_flow},
    };
    for (const auto& [name, check] : checks) {
        try {
            report.results.push_back(check(seed));
        } catch (const std::exception& e) {
            CheckResult r;
            r.name = name;
            r.passed = false;
            r.detail = std::string("aborted: ") + e.what();
            report.results.push_back(std::move(r));
        }
    }
    return report;
}

json verification_to_json(const VerificationReport& report) {
    json checks = json::array();
    for (const CheckResult& r : report.results)
        checks.push_back({{"name", r.name},
                          {"passed", r.passed},
                          {"checks", r.checks},
                          {"worst", format_double(r.worst)},
                          {"detail", r.detail}});
    return json{{"seed", report.seed}, {"all_passed", report.all_passed()}, {"checks", checks}};
}

}  // namespace pmy
