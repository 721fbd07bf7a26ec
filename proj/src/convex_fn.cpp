#include "pmy/convex_fn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pmy {

namespace {

// dense solve with partial pivoting; throws on (numerically) singular input
Vec solve_linear(std::vector<Vec> A, Vec rhs) {
    const int n = static_cast<int>(rhs.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        if (std::abs(A[piv][col]) < 1e-12)
            throw std::runtime_error("solve_linear: singular matrix");
        std::swap(A[piv], A[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int r = col + 1; r < n; ++r) {
            const double m = A[r][col] / A[col][col];
            for (int c = col; c < n; ++c) A[r][c] -= m * A[col][c];
            rhs[r] -= m * rhs[col];
        }
    }
    Vec x(n);
    for (int r = n - 1; r >= 0; --r) {
        double s = rhs[r];
        for (int c = r + 1; c < n; ++c) s -= A[r][c] * x[c];
        x[r] = s / A[r][r];
    }
    return x;
}

bool is_zero_matrix(const std::vector<Vec>& A) {
    for (const Vec& row : A)
        for (double x : row)
            if (x != 0.0) return false;
    return true;
}

std::function<Vec(std::mt19937&)> uniform_box_sampler(Vec lo, Vec hi) {
    return [lo = std::move(lo), hi = std::move(hi)](std::mt19937& rng) {
        Vec v(lo.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            std::uniform_real_distribution<double> dist(lo[i], hi[i]);
            v[i] = dist(rng);
        }
        return v;
    };
}

std::function<Vec(std::mt19937&)> default_sampler(int dim) {
    return uniform_box_sampler(Vec(dim, -3.0), Vec(dim, 3.0));
}

Vec identity_projection(const Vec& v) { return v; }

}  // namespace

ConvexFn quadratic(const std::vector<Vec>& A, const Vec& b, double c) {
    const int n = static_cast<int>(b.size());
    if (static_cast<int>(A.size()) != n)
        throw std::invalid_argument("quadratic: A/b size mismatch");
    for (const Vec& row : A)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("quadratic: A must be square");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(A[i][j] - A[j][i]) > 1e-12)
                throw std::invalid_argument("quadratic: A must be symmetric");
    {
        std::mt19937 rng(99u);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            Vec v(n);
            double nrm2 = 0.0;
            for (double& x : v) {
                x = gauss(rng);
                nrm2 += x * x;
            }
            double quad = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) quad += v[i] * A[i][j] * v[j];
            if (quad < -1e-12 * nrm2)
                throw std::invalid_argument("quadratic: A must be positive semidefinite");
        }
    }

    ConvexFn f;
    f.dim = n;
    f.label = "quadratic";
    f.evaluate = [A, b, c](const Vec& v) {
        double s = c;
        for (std::size_t i = 0; i < v.size(); ++i) {
            s += b[i] * v[i];
            double row = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) row += A[i][j] * v[j];
            s += 0.5 * v[i] * row;
        }
        return s;
    };
    f.subgradient = [A, b](const Vec& v) {
        Vec g(b);
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) g[i] += A[i][j] * v[j];
        return g;
    };
    f.domain_contains = [](const Vec&) { return true; };
    f.project_domain = identity_projection;
    f.sample_domain = default_sampler(n);

    if (is_zero_matrix(A)) {
        // affine case: conjugate is the indicator of {b} shifted by -c
        f.conjugate_analytic = [b, c](const Vec& xi) {
            for (std::size_t i = 0; i < xi.size(); ++i)
                if (std::abs(xi[i] - b[i]) > 1e-12) return kInf;
            return -c;
        };
    } else {
        bool invertible = true;
        try {
            (void)solve_linear(A, b);
        } catch (const std::runtime_error&) {
            invertible = false;
        }
        if (invertible) {
            f.conjugate_analytic = [A, b, c](const Vec& xi) {
                Vec d(xi.size());
                for (std::size_t i = 0; i < xi.size(); ++i) d[i] = xi[i] - b[i];
                const Vec x = solve_linear(A, d);
                return 0.5 * dot(d, x) - c;
            };
        }
    }

    // p=2 Euclidean prox: (I + eps A) v = u - eps b
    f.prox_closed_form = [A, b](const SpaceSpec& space, const PowerParams& params,
                                const Vec& u) -> std::optional<Vec> {
        if (params.p != 2.0 || space.kind != NormKind::Euclidean) return std::nullopt;
        std::vector<Vec> M(A);
        Vec rhs(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            for (std::size_t j = 0; j < u.size(); ++j) M[i][j] = params.eps * A[i][j];
            M[i][i] += 1.0;
            rhs[i] = u[i] - params.eps * b[i];
        }
        return solve_linear(std::move(M), std::move(rhs));
    };
    return f;
}

ConvexFn quadratic_1d(double a, double b, double c) {
    return quadratic({{a}}, {b}, c);
}

ConvexFn zero_fn(int dim) {
    ConvexFn f = quadratic(std::vector<Vec>(dim, Vec(dim, 0.0)), Vec(dim, 0.0), 0.0);
    f.label = "zero";
    return f;
}

ConvexFn one_norm(int dim) {
    ConvexFn f;
    f.dim = dim;
    f.label = "one_norm";
    f.evaluate = [](const Vec& v) {
        double s = 0.0;
        for (double x : v) s += std::abs(x);
        return s;
    };
    f.subgradient = [](const Vec& v) {
        Vec g(v.size(), 0.0);
        for (std::size_t i = 0; i < v.size(); ++i)
            g[i] = (v[i] > 0.0) ? 1.0 : (v[i] < 0.0 ? -1.0 : 0.0);
        return g;
    };
    f.conjugate_analytic = [](const Vec& xi) {
        for (double x : xi)
            if (std::abs(x) > 1.0 + 1e-12) return kInf;
        return 0.0;
    };
    f.domain_contains = [](const Vec&) { return true; };
    f.project_domain = identity_projection;
    f.sample_domain = default_sampler(dim);
    f.prox_closed_form = [](const SpaceSpec& space, const PowerParams& params,
                            const Vec& u) -> std::optional<Vec> {
        if (params.p != 2.0 || space.kind != NormKind::Euclidean) return std::nullopt;
        Vec v(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double t = params.eps;
            v[i] = (u[i] > t) ? u[i] - t : (u[i] < -t ? u[i] + t : 0.0);
        }
        return v;
    };
    return f;
}

ConvexFn indicator_box(const Vec& lo, const Vec& hi) {
    if (lo.size() != hi.size()) throw std::invalid_argument("indicator_box: size mismatch");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] <= hi[i])) throw std::invalid_argument("indicator_box: lo must be <= hi");
    const int n = static_cast<int>(lo.size());

    auto inside = [lo, hi](const Vec& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] < lo[i] - 1e-12 || v[i] > hi[i] + 1e-12) return false;
        return true;
    };
    auto clamp = [lo, hi](const Vec& v) {
        Vec r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = std::clamp(v[i], lo[i], hi[i]);
        return r;
    };

    ConvexFn f;
    f.dim = n;
    f.label = "indicator_box";
    f.evaluate = [inside](const Vec& v) { return inside(v) ? 0.0 : kInf; };
    f.subgradient = [inside](const Vec& v) -> Vec {
        if (!inside(v)) throw std::domain_error("indicator_box: point outside the box");
        return Vec(v.size(), 0.0);  // 0 is in the normal cone everywhere on the box
    };
    f.conjugate_analytic = [lo, hi](const Vec& xi) {
        double s = 0.0;
        for (std::size_t i = 0; i < xi.size(); ++i) s += std::max(xi[i] * lo[i], xi[i] * hi[i]);
        return s;
    };
    f.domain_contains = inside;
    f.project_domain = clamp;
    f.sample_domain = uniform_box_sampler(lo, hi);
    f.prox_closed_form = [clamp](const SpaceSpec& space, const PowerParams& params,
                                 const Vec& u) -> std::optional<Vec> {
        if (params.p != 2.0 || space.kind != NormKind::Euclidean) return std::nullopt;
        return clamp(u);
    };
    return f;
}

ConvexFn indicator_point(const Vec& z) {
    const int n = static_cast<int>(z.size());
    const double tol = 1e-9 * (1.0 + euclidean_norm(z));
    auto at_z = [z, tol](const Vec& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (std::abs(v[i] - z[i]) > tol) return false;
        return true;
    };

    ConvexFn f;
    f.dim = n;
    f.label = "indicator_point";
    f.evaluate = [at_z](const Vec& v) { return at_z(v) ? 0.0 : kInf; };
    f.subgradient = [at_z](const Vec& v) -> Vec {
        if (!at_z(v)) throw std::domain_error("indicator_point: point != z");
        return Vec(v.size(), 0.0);  // minimal element of the full dual space
    };
    f.conjugate_analytic = [z](const Vec& xi) { return dot(xi, z); };
    f.domain_contains = at_z;
    f.project_domain = [z](const Vec&) { return z; };
    f.sample_domain = [z](std::mt19937&) { return z; };
    // the minimizer is z for every space, p, and eps
    f.prox_closed_form = [z](const SpaceSpec&, const PowerParams&,
                             const Vec&) -> std::optional<Vec> { return z; };
    return f;
}

ConvexFn max_affine(const std::vector<std::pair<Vec, double>>& pieces) {
    if (pieces.empty()) throw std::invalid_argument("max_affine: need at least one piece");
    const int n = static_cast<int>(pieces.front().first.size());
    for (const auto& [slope, intercept] : pieces)
        if (static_cast<int>(slope.size()) != n)
            throw std::invalid_argument("max_affine: inconsistent slope dimensions");

    ConvexFn f;
    f.dim = n;
    f.label = "max_affine";
    f.evaluate = [pieces](const Vec& v) {
        double best = -kInf;
        for (const auto& [slope, intercept] : pieces)
            best = std::max(best, dot(slope, v) + intercept);
        return best;
    };
    f.subgradient = [pieces](const Vec& v) {
        double best = -kInf;
        for (const auto& [slope, intercept] : pieces)
            best = std::max(best, dot(slope, v) + intercept);
        std::vector<Vec> active;
        for (const auto& [slope, intercept] : pieces)
            if (dot(slope, v) + intercept >= best - 1e-9 * (1.0 + std::abs(best)))
                active.push_back(slope);
        return min_norm_point_in_hull(active);
    };
    f.domain_contains = [](const Vec&) { return true; };
    f.project_domain = identity_projection;
    f.sample_domain = default_sampler(n);
    return f;
}

ConvexFn power_of_norm(double r, const SpaceSpec& space) {
    if (!(r >= 1.0)) throw std::invalid_argument("power_of_norm: r must be >= 1");
    ConvexFn f;
    f.dim = space.dim;
    f.label = "power_of_norm";
    f.evaluate = [r, space](const Vec& v) { return std::pow(norm(space, v), r) / r; };
    if (r > 1.0) {
        f.subgradient = [r, space](const Vec& v) { return duality_map_p(space, r, v); };
        const double rs = r / (r - 1.0);
        f.conjugate_analytic = [rs, space](const Vec& xi) {
            return std::pow(dual_norm(space, xi), rs) / rs;
        };
    } else {
        // r = 1: f = ||.||, subdifferential at 0 is the dual unit ball
        f.subgradient = [space](const Vec& v) -> Vec {
            const double nv = norm(space, v);
            if (nv == 0.0) return Vec(v.size(), 0.0);
            Vec xi = duality_map_p(space, 2.0, v);
            return scale(1.0 / nv, xi);
        };
        f.conjugate_analytic = [space](const Vec& xi) {
            return dual_norm(space, xi) <= 1.0 + 1e-12 ? 0.0 : kInf;
        };
    }
    f.domain_contains = [](const Vec&) { return true; };
    f.project_domain = identity_projection;
    f.sample_domain = default_sampler(space.dim);
    return f;
}

ConvexFn translate(const ConvexFn& f, const Vec& z) {
    if (static_cast<int>(z.size()) != f.dim)
        throw std::invalid_argument("translate: dimension mismatch");
    ConvexFn g;
    g.dim = f.dim;
    g.label = f.label + "_shifted";
    g.evaluate = [f, z](const Vec& v) { return f.evaluate(sub(v, z)); };
    g.subgradient = [f, z](const Vec& v) { return f.subgradient(sub(v, z)); };
    g.domain_contains = [f, z](const Vec& v) { return f.domain_contains(sub(v, z)); };
    g.project_domain = [f, z](const Vec& v) { return add(z, f.project_domain(sub(v, z))); };
    g.sample_domain = [f, z](std::mt19937& rng) { return add(z, f.sample_domain(rng)); };
    if (f.conjugate_analytic)
        g.conjugate_analytic = [f, z](const Vec& xi) {
            const double c = f.conjugate_analytic(xi);
            return c == kInf ? kInf : c + dot(xi, z);
        };
    if (f.prox_closed_form)
        g.prox_closed_form = [f, z](const SpaceSpec& space, const PowerParams& params,
                                    const Vec& u) -> std::optional<Vec> {
            auto v = f.prox_closed_form(space, params, sub(u, z));
            if (!v) return std::nullopt;
            return add(z, *v);
        };
    return g;
}

double conjugate_numeric(const ConvexFn& f, const Vec& xi, const GridSpec& grid) {
    if (grid.dim() != f.dim || static_cast<int>(xi.size()) != f.dim)
        throw std::invalid_argument("conjugate_numeric: dimension mismatch");
    const long long n = grid.node_count();
    double best = -kInf;
    long long best_index = -1;
    for (long long i = 0; i < n; ++i) {
        const Vec v = grid.node(i);
        const double fv = f.evaluate(v);
        if (fv == kInf) continue;
        const double val = dot(xi, v) - fv;
        if (val > best) {
            best = val;
            best_index = i;
        }
    }
    if (best_index < 0)
        throw std::runtime_error("conjugate_numeric: f is +inf on every grid node");
    // the argmax must be interior, otherwise the sup may lie outside the grid
    const Vec arg = grid.node(best_index);
    for (int a = 0; a < grid.dim(); ++a) {
        const double h = grid.step(a);
        if (arg[a] <= grid.lo[a] + h / 2 || arg[a] >= grid.hi[a] - h / 2)
            throw std::runtime_error(
                "conjugate_numeric: argmax on grid boundary, enlarge the grid");
    }
    return best;
}

Vec subgradient_select(const ConvexFn& f, const Vec& v) {
    if (static_cast<int>(v.size()) != f.dim)
        throw std::invalid_argument("subgradient_select: dimension mismatch");
    return f.subgradient(v);
}

ConvexityReport validate_convexity(const ConvexFn& f, int samples, unsigned seed) {
    std::mt19937 rng(seed);
    ConvexityReport report;
    report.samples = samples;

    bool proper = false;
    for (int s = 0; s < samples; ++s) {
        const Vec v = f.sample_domain(rng);
        const Vec w = f.sample_domain(rng);
        const double fv = f.evaluate(v), fw = f.evaluate(w);
        if (fv < kInf) proper = true;
        if (fv == kInf || fw == kInf) continue;

        for (double t : {0.25, 0.5, 0.75}) {
            Vec m(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) m[i] = t * v[i] + (1.0 - t) * w[i];
            const double lhs = f.evaluate(m);
            const double rhs = t * fv + (1.0 - t) * fw;
            if (lhs > rhs + 1e-9)
                report.violations.push_back({"convexity", v, w, t, lhs - rhs});
        }
        try {
            const Vec g = f.subgradient(v);
            const double lower = fv + dot(g, sub(w, v));
            if (fw < lower - 1e-9)
                report.violations.push_back({"subgradient", v, w, 0.0, lower - fw});
        } catch (const std::domain_error&) {
            // v outside DOM(df); nothing to check
        }
    }
    if (!proper && samples > 0)
        report.violations.push_back({"properness", {}, {}, 0.0, kInf});
    return report;
}

Vec min_norm_point_in_hull(const std::vector<Vec>& points) {
    if (points.empty()) throw std::invalid_argument("min_norm_point_in_hull: empty set");
    if (points.size() == 1) return points.front();
    if (points.size() == 2) {
        // exact projection of the origin onto the segment [a, b]
        const Vec& a = points[0];
        const Vec& b = points[1];
        const Vec d = sub(b, a);
        const double dd = dot(d, d);
        double t = (dd > 0.0) ? std::clamp(-dot(a, d) / dd, 0.0, 1.0) : 0.0;
        return add(a, scale(t, d));
    }
    // projected gradient on the simplex weights for larger active sets
    const int k = static_cast<int>(points.size());
    std::vector<double> lambda(k, 1.0 / k);
    double lip = 0.0;
    for (const Vec& s : points) lip = std::max(lip, dot(s, s));
    const double step_size = 1.0 / (2.0 * k * std::max(lip, 1e-12));
    for (int it = 0; it < 2000; ++it) {
        Vec x(points.front().size(), 0.0);
        for (int j = 0; j < k; ++j) x = add(x, scale(lambda[j], points[j]));
        std::vector<double> g(k);
        for (int j = 0; j < k; ++j) g[j] = 2.0 * dot(points[j], x);
        std::vector<double> y(k);
        for (int j = 0; j < k; ++j) y[j] = lambda[j] - step_size * g[j];
        // exact simplex projection (sort-based)
        std::vector<double> u(y);
        std::sort(u.begin(), u.end(), std::greater<>());
        double css = 0.0, theta = 0.0;
        for (int j = 0; j < k; ++j) {
            css += u[j];
            const double cand = (css - 1.0) / (j + 1);
            if (u[j] - cand > 0.0) theta = cand;
        }
        for (int j = 0; j < k; ++j) lambda[j] = std::max(y[j] - theta, 0.0);
    }
    Vec x(points.front().size(), 0.0);
    for (int j = 0; j < k; ++j) x = add(x, scale(lambda[j], points[j]));
    return x;
}

}  // namespace pmy
