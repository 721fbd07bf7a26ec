#include "pmy/hj.hpp"

#include <cmath>
#include <stdexcept>

namespace pmy {

SpaceTimeField lax_oleinik(const ConvexFn& f, const SpaceSpec& space, double p,
                           const GridSpec& x_grid, const std::vector<double>& t_values) {
    if (x_grid.dim() > 2) throw std::invalid_argument("lax_oleinik: x_grid must be 1D or 2D");
    if (t_values.empty()) throw std::invalid_argument("lax_oleinik: empty t_values");
    for (std::size_t i = 0; i < t_values.size(); ++i) {
        if (!(t_values[i] > 0.0)) throw std::invalid_argument("lax_oleinik: t must be > 0");
        if (i > 0 && !(t_values[i] > t_values[i - 1]))
            throw std::invalid_argument("lax_oleinik: t_values must increase");
    }
    SpaceTimeField field;
    field.x_grid = x_grid;
    field.t_values = t_values;
    const long long nodes = x_grid.node_count();
    for (double t : t_values) {
        const PowerParams params(p, t);
        std::vector<double> row(static_cast<std::size_t>(nodes));
        for (long long i = 0; i < nodes; ++i)
            row[static_cast<std::size_t>(i)] = envelope_value(f, space, params, x_grid.node(i));
        field.values.push_back(std::move(row));
    }
    return field;
}

HjResidual hj_residual(const SpaceTimeField& field, const SpaceSpec& space, double p) {
    const GridSpec& g = field.x_grid;
    const int nt = static_cast<int>(field.t_values.size());
    if (nt < 3 || g.points_per_axis < 3)
        throw std::invalid_argument("hj_residual: need >= 3 t-values and x-nodes per axis");
    const double dt = field.t_values[1] - field.t_values[0];
    for (int i = 1; i < nt; ++i)
        if (std::abs(field.t_values[i] - field.t_values[i - 1] - dt) > 1e-9 * dt)
            throw std::invalid_argument("hj_residual: t_values must be uniformly spaced");

    const double p_star = p / (p - 1.0);
    double h = dt;
    for (int a = 0; a < g.dim(); ++a) h = std::max(h, g.step(a));

    // strides for neighbor lookup in the lexicographic node ordering
    std::vector<long long> stride(g.dim(), 1);
    for (int a = g.dim() - 2; a >= 0; --a) stride[a] = stride[a + 1] * g.points_per_axis;

    HjResidual result;
    const long long nodes = g.node_count();
    for (int ti = 1; ti < nt - 1; ++ti) {
        for (long long i = 0; i < nodes; ++i) {
            bool interior = true;
            long long rem = i;
            for (int a = 0; a < g.dim(); ++a) {
                const long long k = rem / stride[a];
                rem %= stride[a];
                if (k == 0 || k == g.points_per_axis - 1) interior = false;
            }
            if (!interior) continue;

            const auto u = [&](int t_off, long long node) {
                return field.values[ti + t_off][static_cast<std::size_t>(node)];
            };
            // exclude nodes where the field is not locally smooth
            bool kink = std::abs(u(1, i) - 2.0 * u(0, i) + u(-1, i)) > 10.0 * h;
            Vec grad(g.dim());
            for (int a = 0; a < g.dim() && !kink; ++a) {
                const double up = u(0, i + stride[a]), um = u(0, i - stride[a]);
                if (std::abs(up - 2.0 * u(0, i) + um) > 10.0 * h) kink = true;
                grad[a] = (up - um) / (2.0 * g.step(a));
            }
            if (kink) {
                ++result.kink_count;
                continue;
            }
            const double ut = (u(1, i) - u(-1, i)) / (2.0 * dt);
            const double r = ut + std::pow(dual_norm(space, grad), p_star) / p_star;
            result.max_residual = std::max(result.max_residual, std::abs(r));
            ++result.interior_count;
        }
    }
    return result;
}

}  // namespace pmy
