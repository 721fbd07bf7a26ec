#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pmy/grid.hpp"
#include "pmy/space.hpp"

namespace pmy {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A proper, lower semicontinuous, convex function on R^n. Evaluators may
/// return +inf outside the effective domain. Immutable after construction;
/// all members must be pure.
struct ConvexFn {
    int dim = 1;
    std::string label;

    std::function<double(const Vec&)> evaluate;
    /// One element of the subdifferential; at kinks the minimal
    /// Euclidean-norm element. Defined on DOM(df) only.
    std::function<Vec(const Vec&)> subgradient;
    std::function<bool(const Vec&)> domain_contains;

    std::function<double(const Vec&)> conjugate_analytic;  // optional
    /// Optional fast path for the proximal map; returns nullopt when the
    /// (space, params) combination has no closed form.
    std::function<std::optional<Vec>(const SpaceSpec&, const PowerParams&, const Vec&)>
        prox_closed_form;
    /// Nearest-point projection onto DOM(f); identity when DOM(f) = R^n.
    std::function<Vec(const Vec&)> project_domain;
    /// Draws a point of DOM(f) for randomized validation.
    std::function<Vec(std::mt19937&)> sample_domain;
};

// ---- catalog -------------------------------------------------------------

/// f(v) = 0.5 v'Av + b'v + c with A symmetric positive semidefinite.
ConvexFn quadratic(const std::vector<Vec>& A, const Vec& b, double c);
ConvexFn quadratic_1d(double a, double b = 0.0, double c = 0.0);
ConvexFn zero_fn(int dim);
ConvexFn one_norm(int dim);
ConvexFn indicator_box(const Vec& lo, const Vec& hi);
ConvexFn indicator_point(const Vec& z);
/// f(v) = max_i (<slope_i, v> + intercept_i)
ConvexFn max_affine(const std::vector<std::pair<Vec, double>>& pieces);
/// f(v) = ||v||^r / r in the given space, r >= 1.
ConvexFn power_of_norm(double r, const SpaceSpec& space);

/// g(v) = f(v - z), with conjugate g*(xi) = f*(xi) + <xi,z> and prox shifted
/// accordingly.
ConvexFn translate(const ConvexFn& f, const Vec& z);

// ---- operations ----------------------------------------------------------

/// Brute-force Legendre-Fenchel transform: max over grid nodes of
/// <xi,v> - f(v). Throws if the argmax lands on the grid boundary.
double conjugate_numeric(const ConvexFn& f, const Vec& xi, const GridSpec& grid);

Vec subgradient_select(const ConvexFn& f, const Vec& v);

struct ConvexityViolation {
    std::string kind;  // "convexity" | "subgradient" | "properness"
    Vec v, w;
    double t = 0.0;
    double margin = 0.0;
};

struct ConvexityReport {
    int samples = 0;
    std::vector<ConvexityViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Samples midpoint-convexity, the subgradient inequality, and properness.
/// Violations are findings, not errors.
ConvexityReport validate_convexity(const ConvexFn& f, int samples, unsigned seed);

// minimal Euclidean-norm point in the convex hull of a finite point set
Vec min_norm_point_in_hull(const std::vector<Vec>& points);

}  // namespace pmy
