#include "pmy/space.hpp"

#include <cmath>
#include <cstddef>

namespace pmy {

static void check_dim(const SpaceSpec& space, const Vec& v, const char* what) {
    if (static_cast<int>(v.size()) != space.dim)
        throw std::invalid_argument(std::string(what) + ": vector length " +
                                    std::to_string(v.size()) + " != space dim " +
                                    std::to_string(space.dim));
}

SpaceSpec SpaceSpec::euclidean(int dim) {
    if (dim < 1) throw std::invalid_argument("dim must be >= 1");
    SpaceSpec s;
    s.dim = dim;
    s.kind = NormKind::Euclidean;
    return s;
}

SpaceSpec SpaceSpec::q_norm(int dim, double q) {
    if (dim < 1) throw std::invalid_argument("dim must be >= 1");
    if (!(q > 1.0) || !std::isfinite(q))
        throw std::invalid_argument("q must lie in (1, inf)");
    SpaceSpec s;
    s.dim = dim;
    s.kind = NormKind::QNorm;
    s.q = q;
    return s;
}

SpaceSpec SpaceSpec::weighted_euclidean(Vec weights) {
    if (weights.empty()) throw std::invalid_argument("weights must be non-empty");
    for (double w : weights)
        if (!(w > 0.0)) throw std::invalid_argument("weights must be positive");
    SpaceSpec s;
    s.dim = static_cast<int>(weights.size());
    s.kind = NormKind::WeightedEuclidean;
    s.weights = std::move(weights);
    return s;
}

double SpaceSpec::dual_exponent() const {
    return (kind == NormKind::QNorm) ? q / (q - 1.0) : 2.0;
}

PowerParams::PowerParams(double p_, double eps_) : p(p_), eps(eps_) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::invalid_argument("p must lie in (1, inf)");
    if (!(eps > 1e-10))
        throw std::invalid_argument("eps must be > 1e-10");
    p_star = p / (p - 1.0);
}

double norm(const SpaceSpec& space, const Vec& v) {
    check_dim(space, v, "norm");
    switch (space.kind) {
        case NormKind::Euclidean:
            return euclidean_norm(v);
        case NormKind::QNorm: {
            double s = 0.0;
            for (double x : v) s += std::pow(std::abs(x), space.q);
            return std::pow(s, 1.0 / space.q);
        }
        case NormKind::WeightedEuclidean: {
            double s = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) s += space.weights[i] * v[i] * v[i];
            return std::sqrt(s);
        }
    }
    throw std::logic_error("unreachable norm kind");
}

double dual_norm(const SpaceSpec& space, const Vec& xi) {
    check_dim(space, xi, "dual_norm");
    switch (space.kind) {
        case NormKind::Euclidean:
            return euclidean_norm(xi);
        case NormKind::QNorm: {
            const double qs = space.dual_exponent();
            double s = 0.0;
            for (double x : xi) s += std::pow(std::abs(x), qs);
            return std::pow(s, 1.0 / qs);
        }
        case NormKind::WeightedEuclidean: {
            double s = 0.0;
            for (std::size_t i = 0; i < xi.size(); ++i) s += xi[i] * xi[i] / space.weights[i];
            return std::sqrt(s);
        }
    }
    throw std::logic_error("unreachable norm kind");
}

Vec duality_map_p(const SpaceSpec& space, double p, const Vec& v) {
    check_dim(space, v, "duality_map_p");
    if (!(p > 1.0)) throw std::invalid_argument("duality_map_p: p must be > 1");
    const double nv = norm(space, v);
    Vec xi(v.size(), 0.0);
    if (nv == 0.0) return xi;  // subdifferential of ||.||^p/p at 0 is {0} for p > 1
    switch (space.kind) {
        case NormKind::Euclidean: {
            const double c = std::pow(nv, p - 2.0);
            for (std::size_t i = 0; i < v.size(); ++i) xi[i] = c * v[i];
            break;
        }
        case NormKind::QNorm: {
            const double c = std::pow(nv, p - space.q);
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (v[i] == 0.0) continue;  // |v_i|^{q-1} sgn(v_i) -> 0, also for q < 2
                xi[i] = c * std::pow(std::abs(v[i]), space.q - 1.0) * (v[i] > 0 ? 1.0 : -1.0);
            }
            break;
        }
        case NormKind::WeightedEuclidean: {
            const double c = std::pow(nv, p - 2.0);
            for (std::size_t i = 0; i < v.size(); ++i) xi[i] = c * space.weights[i] * v[i];
            break;
        }
    }
    return xi;
}

std::pair<double, double> duality_monotonicity_gap(const SpaceSpec& space, double p,
                                                   const Vec& u, const Vec& v) {
    check_dim(space, u, "duality_monotonicity_gap");
    check_dim(space, v, "duality_monotonicity_gap");
    const Vec fu = duality_map_p(space, p, u);
    const Vec fv = duality_map_p(space, p, v);
    const double lhs = dot(sub(fu, fv), sub(u, v));
    const double nu = norm(space, u), nv = norm(space, v);
    const double rhs = (std::pow(nu, p - 1.0) - std::pow(nv, p - 1.0)) * (nu - nv);
    return {lhs, rhs};
}

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec scale(double s, const Vec& v) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

double euclidean_norm(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace pmy
