#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pmy/convex_fn.hpp"

using namespace pmy;

TEST_CASE("catalog evaluation") {
    CHECK(one_norm(2).evaluate({3.0, -4.0}) == doctest::Approx(7.0));
    CHECK(quadratic_1d(1.0).evaluate({3.0}) == doctest::Approx(4.5));
    CHECK(quadratic_1d(2.0, 1.0, 0.5).evaluate({1.0}) == doctest::Approx(2.5));
    CHECK(indicator_box({-1.0}, {1.0}).evaluate({0.5}) == 0.0);
    CHECK(indicator_box({-1.0}, {1.0}).evaluate({1.5}) == kInf);
    CHECK(indicator_point({2.0}).evaluate({2.0}) == 0.0);
    CHECK(indicator_point({2.0}).evaluate({2.1}) == kInf);
    CHECK(max_affine({{{1.0}, 0.0}, {{2.0}, 0.0}}).evaluate({1.5}) == doctest::Approx(3.0));
    CHECK(max_affine({{{1.0}, 0.0}, {{2.0}, 0.0}}).evaluate({-1.0}) == doctest::Approx(-1.0));
    CHECK(power_of_norm(3.0, SpaceSpec::euclidean(1)).evaluate({2.0}) ==
          doctest::Approx(8.0 / 3.0));
    CHECK(zero_fn(1).evaluate({5.0}) == 0.0);
}

TEST_CASE("numeric conjugate") {
    SUBCASE("quadratic against xi^2/2") {
        const GridSpec grid({-10.0}, {10.0}, 4001);
        CHECK(conjugate_numeric(quadratic_1d(1.0), {1.0}, grid) ==
              doctest::Approx(0.5).epsilon(1e-5));
    }
    SUBCASE("one_norm inside the unit ball") {
        const GridSpec grid({-10.0}, {10.0}, 4001);
        CHECK(conjugate_numeric(one_norm(1), {0.5}, grid) == doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("xi=0 for a function with min 0") {
        const GridSpec grid({-10.0}, {10.0}, 4001);
        CHECK(conjugate_numeric(quadratic_1d(1.0), {0.0}, grid) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("argmax on the boundary is rejected") {
        // conjugate of v^2/2 at xi=100 has argmax 100, far outside [-10,10]
        CHECK_THROWS_AS(conjugate_numeric(quadratic_1d(1.0), {100.0},
                                          GridSpec({-10.0}, {10.0}, 101)),
                        std::runtime_error);
    }
}

TEST_CASE("subgradient selection") {
    CHECK(subgradient_select(one_norm(1), {0.0})[0] == doctest::Approx(0.0));
    CHECK(subgradient_select(one_norm(1), {2.0})[0] == doctest::Approx(1.0));
    CHECK(subgradient_select(quadratic_1d(1.0), {3.0})[0] == doctest::Approx(3.0));
    // subdifferential of max{v, 2v} at 0 is [1,2]; the minimal-norm element is 1
    CHECK(subgradient_select(max_affine({{{1.0}, 0.0}, {{2.0}, 0.0}}), {0.0})[0] ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("convexity validation") {
    CHECK(validate_convexity(quadratic({{1.0, 0.0}, {0.0, 1.0}}, {0.0, 0.0}, 0.0), 200, 1)
              .ok());
    CHECK(validate_convexity(
              max_affine({{{1.0}, 0.0}, {{-1.0}, 0.5}, {{0.5}, -0.2}}), 200, 1)
              .ok());
    ConvexFn probe;
    probe.dim = 1;
    probe.label = "concave_probe";
    probe.evaluate = [](const Vec& v) { return -v[0] * v[0]; };
    probe.subgradient = [](const Vec& v) { return Vec{-2.0 * v[0]}; };
    probe.domain_contains = [](const Vec&) { return true; };
    probe.project_domain = [](const Vec& v) { return v; };
    probe.sample_domain = [](std::mt19937& rng) {
        std::uniform_real_distribution<double> d(-3.0, 3.0);
        return Vec{d(rng)};
    };
    CHECK_FALSE(validate_convexity(probe, 200, 1).ok());
}

TEST_CASE("analytic conjugates satisfy Fenchel-Young with equality at gradients") {
    for (const ConvexFn& f :
         {quadratic_1d(1.0), power_of_norm(2.5, SpaceSpec::euclidean(1))}) {
        for (double v : {-1.7, -0.3, 0.6, 2.2}) {
            const Vec g = subgradient_select(f, {v});
            CHECK(f.evaluate({v}) + f.conjugate_analytic(g) ==
                  doctest::Approx(g[0] * v).epsilon(1e-10));
        }
    }
}

TEST_CASE("translate shifts everything consistently") {
    const ConvexFn g = translate(one_norm(1), {0.25});
    CHECK(g.evaluate({0.25}) == doctest::Approx(0.0));
    CHECK(g.evaluate({1.25}) == doctest::Approx(1.0));
    CHECK(g.subgradient({2.0})[0] == doctest::Approx(1.0));
    // g*(xi) = f*(xi) + xi * z
    CHECK(g.conjugate_analytic({0.5}) == doctest::Approx(0.125));
}

TEST_CASE("minimal-norm point in a hull") {
    CHECK(min_norm_point_in_hull({{3.0}})[0] == doctest::Approx(3.0));
    CHECK(min_norm_point_in_hull({{1.0}, {2.0}})[0] == doctest::Approx(1.0));
    CHECK(min_norm_point_in_hull({{-1.0}, {2.0}})[0] == doctest::Approx(0.0));
    const Vec p = min_norm_point_in_hull({{1.0, 0.0}, {0.0, 1.0}});
    CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("quadratic requires positive semidefinite A") {
    CHECK_THROWS_AS(quadratic({{-1.0}}, {0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(power_of_norm(0.5, SpaceSpec::euclidean(1)), std::invalid_argument);
}
