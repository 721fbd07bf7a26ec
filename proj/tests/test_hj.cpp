#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pmy/hj.hpp"

using namespace pmy;

namespace {

const SpaceSpec e1 = SpaceSpec::euclidean(1);

// locate the field value at a node, t-major layout
double field_at(const SpaceTimeField& f, int ti, double x) {
    for (long long k = 0; k < f.x_grid.node_count(); ++k) {
        if (std::abs(f.x_grid.node(k)[0] - x) <= 1e-12) return f.values[ti][static_cast<std::size_t>(k)];
    }
    FAIL("node not on grid");
    return 0.0;
}

}  // namespace

TEST_CASE("Lax-Oleinik values for |x| at p=2 are the Huber function") {
    const SpaceTimeField f =
        lax_oleinik(one_norm(1), e1, 2.0, GridSpec({-2.0}, {2.0}, 9), {0.5, 1.0});
    // t = 1: x^2/2 inside |x| <= 1, |x| - 1/2 outside
    CHECK(field_at(f, 1, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(field_at(f, 1, 2.0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(field_at(f, 1, 0.5) == doctest::Approx(0.125).epsilon(1e-12));
    // t = 0.5
    CHECK(field_at(f, 0, 2.0) == doctest::Approx(1.75).epsilon(1e-12));
    CHECK(field_at(f, 0, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("the value function is non-increasing in t") {
    const SpaceTimeField f = lax_oleinik(quadratic_1d(1.0), e1, 2.0, GridSpec({-2.0}, {2.0}, 21),
                                         {0.25, 0.5, 1.0, 2.0});
    for (long long k = 0; k < f.x_grid.node_count(); ++k) {
        for (std::size_t ti = 1; ti < f.t_values.size(); ++ti) {
            CHECK(f.values[ti][static_cast<std::size_t>(k)] <= f.values[ti - 1][static_cast<std::size_t>(k)] + 1e-12);
        }
    }
}

TEST_CASE("PDE residual") {
    SUBCASE("smooth quadratic data: second-order residual") {
        for (double h : {0.05, 0.025}) {
            std::vector<double> ts;
            for (double t = 0.5; t <= 1.0 + 1e-12; t += h) ts.push_back(t);
            const int nx = static_cast<int>(std::lround(4.0 / h)) + 1;
            const SpaceTimeField f =
                lax_oleinik(quadratic_1d(1.0), e1, 2.0, GridSpec({-2.0}, {2.0}, nx), ts);
            const HjResidual r = hj_residual(f, e1, 2.0);
            CHECK(r.kink_count == 0);
            CHECK(r.max_residual <= 5.0 * h * h);
        }
    }
    SUBCASE("zero data solves the equation exactly") {
        const SpaceTimeField f =
            lax_oleinik(zero_fn(1), e1, 2.0, GridSpec({-1.0}, {1.0}, 11), {0.5, 0.6, 0.7});
        const HjResidual r = hj_residual(f, e1, 2.0);
        CHECK(r.max_residual <= 1e-12);
    }
    SUBCASE("one_norm data: first-order residual once kinks are excluded") {
        const double h = 0.025;
        std::vector<double> ts;
        for (double t = 0.5; t <= 1.0 + 1e-12; t += h) ts.push_back(t);
        const SpaceTimeField f =
            lax_oleinik(one_norm(1), e1, 2.0, GridSpec({-2.0}, {2.0}, 161), ts);
        const HjResidual r = hj_residual(f, e1, 2.0);
        CHECK(r.interior_count > 0);
        CHECK(r.max_residual <= 3.0 * h);
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(lax_oleinik(one_norm(1), e1, 2.0, GridSpec({-1.0}, {1.0}, 5), {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(lax_oleinik(one_norm(1), e1, 2.0, GridSpec({-1.0}, {1.0}, 5), {1.0, 0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(lax_oleinik(one_norm(1), e1, 2.0, GridSpec({-1.0}, {1.0}, 5), {-1.0}),
                    std::invalid_argument);
    SpaceTimeField f = lax_oleinik(zero_fn(1), e1, 2.0, GridSpec({-1.0}, {1.0}, 5), {0.5, 0.7});
    CHECK_THROWS_AS(hj_residual(f, e1, 2.0), std::invalid_argument);  // < 3 t-values
    f.t_values = {0.5, 0.6, 0.8};
    f.values.push_back(f.values.back());
    CHECK_THROWS_AS(hj_residual(f, e1, 2.0), std::invalid_argument);  // non-uniform t
}
