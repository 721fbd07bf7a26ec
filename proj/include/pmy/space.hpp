#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pmy {

using Vec = std::vector<double>;

enum class NormKind { Euclidean, QNorm, WeightedEuclidean };

/// A finite-dimensional normed space: dimension plus one of the smooth,
/// strictly convex norm families (Euclidean, l_q with 1<q<inf, weighted
/// Euclidean with positive weights).
struct SpaceSpec {
    int dim = 1;
    NormKind kind = NormKind::Euclidean;
    double q = 2.0;        // only for QNorm
    Vec weights;           // only for WeightedEuclidean, length dim

    static SpaceSpec euclidean(int dim);
    static SpaceSpec q_norm(int dim, double q);
    static SpaceSpec weighted_euclidean(Vec weights);

    // dual exponent q* = q/(q-1)
    double dual_exponent() const;
};

/// The pair (p, eps) with the conjugate exponent p* = p/(p-1) stored.
struct PowerParams {
    double p;
    double eps;
    double p_star;

    PowerParams(double p_, double eps_);
};

double norm(const SpaceSpec& space, const Vec& v);
double dual_norm(const SpaceSpec& space, const Vec& xi);

/// The p-duality map F^p = d(||.||^p / p): the unique xi with
/// <xi,v> = ||v||^p = ||xi||_*^{p*}. F^p(0) = 0 for all p > 1.
Vec duality_map_p(const SpaceSpec& space, double p, const Vec& v);

/// Returns (lhs, rhs) of the monotonicity inequality
/// <F^p(u)-F^p(v), u-v> >= (||u||^{p-1}-||v||^{p-1})(||u||-||v||) >= 0.
std::pair<double, double> duality_monotonicity_gap(const SpaceSpec& space, double p,
                                                   const Vec& u, const Vec& v);

// small vector helpers shared across modules
double dot(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec scale(double s, const Vec& v);
double euclidean_norm(const Vec& v);

}  // namespace pmy
