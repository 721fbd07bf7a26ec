#include "pmy/mosco.hpp"

#include <algorithm>
#include <cmath>

namespace pmy {

namespace {

std::vector<Vec> grid_nodes(const GridSpec& grid) {
    std::vector<Vec> nodes;
    const long long n = grid.node_count();
    nodes.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) nodes.push_back(grid.node(i));
    return nodes;
}

// forcing argmin of f_n(v) + weight ||v - u||^2, localized by grid refinement
GridResult forcing_argmin(const ConvexFn& fn, const GridSpec& grid, const Vec& u,
                          double weight) {
    return grid_refine(
        [&](const Vec& v) {
            const double fv = fn.evaluate(v);
            if (fv == kInf) return kInf;
            const Vec d = sub(v, u);
            return fv + weight * dot(d, d);
        },
        grid, 7);
}

std::vector<Vec> unit_directions(int dim, int count) {
    std::vector<Vec> dirs;
    if (dim == 1) {
        dirs.push_back({1.0});
        dirs.push_back({-1.0});
    }
    std::mt19937 rng(777u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    while (static_cast<int>(dirs.size()) < count) {
        Vec d(dim);
        for (double& x : d) x = gauss(rng);
        const double n = euclidean_norm(d);
        if (n < 1e-8) continue;
        dirs.push_back(scale(1.0 / n, d));
    }
    return dirs;
}

}  // namespace

MoscoReport liminf_check(const FunctionSequence& seq, const GridSpec& grid, int n_max,
                         double tol) {
    MoscoReport report{"liminf", seq.label, {}};
    const int n1 = std::max(2, n_max / 2), n2 = n_max;
    for (const Vec& u : grid_nodes(grid)) {
        const double fu = seq.limit.evaluate(u);
        NodeFinding finding;
        finding.node = u;
        if (fu < kInf) {
            // margins decay like c/n for the shipped families; extrapolate the
            // limit from the two largest indices
            const GridResult r1 = forcing_argmin(seq.member(n1), grid, u, n1);
            const GridResult r2 = forcing_argmin(seq.member(n2), grid, u, n2);
            const double m1 = seq.member(n1).evaluate(r1.argmin) - fu;
            const double m2 = seq.member(n2).evaluate(r2.argmin) - fu;
            const double c = (m1 - m2) / (1.0 / n1 - 1.0 / n2);
            const double limit_margin = m2 - c / n2;
            finding.margin = limit_margin;
            finding.violated = limit_margin < -tol;
        } else {
            // out of the limit domain: the forcing values must escape, either
            // by staying away from u or by blowing up
            const ConvexFn fn = seq.member(n2);
            const GridResult r = forcing_argmin(fn, grid, u, n2);
            const double val = fn.evaluate(r.argmin);
            const double dist = euclidean_norm(sub(r.argmin, u));
            finding.margin = val;
            finding.violated = !(dist >= 2.0 / n_max || val >= 1.0 / tol);
        }
        report.findings.push_back(std::move(finding));
    }
    return report;
}

MoscoReport recovery_check(const FunctionSequence& seq, const GridSpec& grid, int n_max,
                           double tol) {
    MoscoReport report{"recovery", seq.label, {}};
    for (const Vec& u : grid_nodes(grid)) {
        const double fu = seq.limit.evaluate(u);
        if (fu == kInf) continue;  // limsup condition is trivial there
        NodeFinding finding;
        finding.node = u;
        double worst = -kInf;
        for (int n : {std::max(2, n_max / 2), std::max(3, 3 * n_max / 4), n_max}) {
            const ConvexFn fn = seq.member(n);
            const double radius = std::max(2.0 / n, 2.0 * grid.max_step());
            Vec lo(u.size()), hi(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) {
                lo[i] = u[i] - radius;
                hi[i] = u[i] + radius;
            }
            const GridResult r = grid_refine(
                [&](const Vec& v) {
                    const double fv = fn.evaluate(v);
                    if (fv == kInf) return kInf;
                    // only the overshoot above f(u) matters for the limsup;
                    // the small distance weight is a tie-break inside the
                    // zero-overshoot region
                    return std::max(fv - fu, 0.0) + 1e-3 * euclidean_norm(sub(v, u));
                },
                GridSpec(std::move(lo), std::move(hi), 51), 6);
            worst = std::max(worst, fn.evaluate(r.argmin) - fu);
        }
        finding.margin = worst;
        finding.violated = worst > tol;
        report.findings.push_back(std::move(finding));
    }
    return report;
}

std::vector<SupGapRow> envelope_preserves(const FunctionSequence& seq, const SpaceSpec& space,
                                          const PowerParams& params, const GridSpec& grid,
                                          int n_max) {
    const std::vector<Vec> nodes = grid_nodes(grid);
    std::vector<double> limit_env;
    limit_env.reserve(nodes.size());
    for (const Vec& u : nodes) limit_env.push_back(envelope_value(seq.limit, space, params, u));

    std::vector<SupGapRow> rows;
    for (int n = 1; n <= n_max; ++n) {
        const ConvexFn fn = seq.member(n);
        double sup = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            sup = std::max(sup, std::abs(envelope_value(fn, space, params, nodes[i]) -
                                         limit_env[i]));
        rows.push_back({n, sup});
    }
    return rows;
}

DiagonalReport diagonal_convergence(const FunctionSequence& seq, const SpaceSpec& space,
                                    double p, const std::function<double(int)>& eps_schedule,
                                    const GridSpec& grid, int n_max) {
    const std::vector<Vec> nodes = grid_nodes(grid);
    DiagonalReport report;
    for (int n = 1; n <= n_max; ++n) {
        const double eps = eps_schedule(n);
        if (!(eps > 0.0) || eps > 1.0)
            throw std::invalid_argument("diagonal_convergence: eps_schedule must map into (0,1]");
        const PowerParams params(p, eps);
        const ConvexFn fn = seq.member(n);
        double sup = 0.0;
        double div_min = kInf;
        bool has_outside = false;
        for (const Vec& u : nodes) {
            const double fu = seq.limit.evaluate(u);
            const double val = envelope_value(fn, space, params, u);
            if (fu < kInf) {
                sup = std::max(sup, std::abs(val - fu));
            } else {
                has_outside = true;
                div_min = std::min(div_min, val);
            }
        }
        report.sup_gap.push_back({n, sup});
        if (has_outside) report.divergence_min.push_back({n, div_min});
    }
    return report;
}

std::vector<SuperlinearityRow> superlinearity_profile(const ConvexFn& f, const SpaceSpec& space,
                                                      double p,
                                                      const std::vector<double>& eps_set,
                                                      const std::vector<double>& radii) {
    const std::vector<Vec> dirs = unit_directions(space.dim, 16);
    std::vector<SuperlinearityRow> rows;
    for (double radius : radii) {
        double min_ratio = kInf;
        for (double eps : eps_set) {
            const PowerParams params(p, eps);
            for (const Vec& d : dirs) {
                const Vec v = scale(radius / norm(space, d), d);
                min_ratio = std::min(min_ratio, envelope_value(f, space, params, v) / radius);
            }
        }
        rows.push_back({radius, min_ratio});
    }
    return rows;
}

// ---- fixtures ------------------------------------------------------------

FunctionSequence shifted_one_norm_sequence() {
    FunctionSequence seq;
    seq.label = "shifted_one_norm";
    seq.member = [](int n) { return translate(one_norm(1), {1.0 / n}); };
    seq.limit = one_norm(1);
    return seq;
}

FunctionSequence scaled_quadratic_sequence() {
    FunctionSequence seq;
    seq.label = "scaled_quadratic";
    seq.member = [](int n) { return quadratic_1d(1.0 + 1.0 / n); };
    seq.limit = quadratic_1d(1.0);
    return seq;
}

FunctionSequence shrinking_box_sequence() {
    FunctionSequence seq;
    seq.label = "shrinking_box";
    seq.member = [](int n) { return indicator_box({-1.0 - 1.0 / n}, {1.0 + 1.0 / n}); };
    seq.limit = indicator_box({-1.0}, {1.0});
    return seq;
}

FunctionSequence indicator_point_sequence() {
    FunctionSequence seq;
    seq.label = "indicator_point";
    seq.member = [](int) { return indicator_point({0.0}); };
    seq.limit = indicator_point({0.0});
    return seq;
}

FunctionSequence converging_max_affine_sequence() {
    FunctionSequence seq;
    seq.label = "converging_max_affine";
    seq.member = [](int n) {
        return max_affine({{{1.0 + 1.0 / n}, 0.0}, {{-1.0}, 0.0}});
    };
    seq.limit = max_affine({{{1.0}, 0.0}, {{-1.0}, 0.0}});
    return seq;
}

std::vector<FunctionSequence> mosco_fixtures() {
    return {shifted_one_norm_sequence(), scaled_quadratic_sequence(), shrinking_box_sequence(),
            indicator_point_sequence(), converging_max_affine_sequence()};
}

}  // namespace pmy
