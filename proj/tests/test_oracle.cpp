#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "pmy/convex_fn.hpp"
#include "pmy/grid.hpp"

using namespace pmy;

TEST_CASE("grid geometry") {
    const GridSpec g({0.0, -1.0}, {1.0, 1.0}, 5);
    CHECK(g.dim() == 2);
    CHECK(g.node_count() == 25);
    CHECK(g.step(0) == doctest::Approx(0.25));
    CHECK(g.step(1) == doctest::Approx(0.5));
    CHECK(g.max_step() == doctest::Approx(0.5));
    // last axis fastest
    const Vec n1 = g.node(1);
    CHECK(n1[0] == doctest::Approx(0.0));
    CHECK(n1[1] == doctest::Approx(-0.5));
    CHECK_THROWS_AS(GridSpec({1.0}, {0.0}, 11), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec({0.0}, {1.0}, 1), std::invalid_argument);
}

TEST_CASE("grid minimization examples") {
    SUBCASE("vertex on grid") {
        const GridResult r = grid_minimize(
            [](const Vec& v) { return (v[0] - 2.0) * (v[0] - 2.0); }, GridSpec({0.0}, {4.0}, 401));
        CHECK(r.argmin[0] == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(r.min <= 1e-24);
    }
    SUBCASE("kink on grid") {
        const GridResult r =
            grid_minimize([](const Vec& v) { return std::abs(v[0]); }, GridSpec({-1.0}, {1.0}, 201));
        CHECK(r.argmin[0] == 0.0);
        CHECK(r.min == 0.0);
    }
    SUBCASE("envelope objective of the soft threshold") {
        const GridResult r = grid_minimize(
            [](const Vec& v) { return 0.5 * (3.0 - v[0]) * (3.0 - v[0]) + std::abs(v[0]); },
            GridSpec({-10.0}, {10.0}, 20001));
        CHECK(r.argmin[0] == doctest::Approx(2.0).epsilon(1e-3));
        CHECK(r.min == doctest::Approx(2.5).epsilon(1e-3));
    }
    SUBCASE("all-inf objective is an error") {
        CHECK_THROWS_AS(grid_minimize([](const Vec&) { return kInf; }, GridSpec({0.0}, {1.0}, 11)),
                        std::runtime_error);
    }
    SUBCASE("ties break to the smallest node index") {
        const GridResult r =
            grid_minimize([](const Vec&) { return 1.0; }, GridSpec({0.0}, {1.0}, 11));
        CHECK(r.argmin[0] == 0.0);
    }
}

TEST_CASE("grid maximization") {
    const GridResult r = grid_maximize(
        [](const Vec& v) { return -(v[0] - 1.0) * (v[0] - 1.0); }, GridSpec({0.0}, {4.0}, 401));
    CHECK(r.argmin[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.min == doctest::Approx(0.0));
}

TEST_CASE("refinement examples") {
    SUBCASE("convex vertex") {
        const GridResult r = grid_refine(
            [](const Vec& v) { return (v[0] - 2.0) * (v[0] - 2.0); }, GridSpec({0.0}, {4.0}, 41),
            4);
        CHECK(r.argmin[0] == doctest::Approx(2.0).epsilon(1e-6));
    }
    SUBCASE("pi localization") {
        const GridResult r = grid_refine([](const Vec& v) { return std::abs(v[0] - M_PI); },
                                         GridSpec({0.0}, {10.0}, 101), 6);
        CHECK(std::abs(r.argmin[0] - M_PI) <= 1e-6);
    }
    SUBCASE("soft-threshold envelope self-consistency") {
        const GridResult r = grid_refine(
            [](const Vec& v) { return 0.5 * (3.0 - v[0]) * (3.0 - v[0]) + std::abs(v[0]); },
            GridSpec({-10.0}, {10.0}, 201), 4);
        CHECK(r.argmin[0] == doctest::Approx(2.0).epsilon(1e-6));
        CHECK(r.min == doctest::Approx(2.5).epsilon(1e-8));
    }
    SUBCASE("refinement never increases the incumbent") {
        double prev = kInf;
        for (int rounds = 1; rounds <= 6; ++rounds) {
            const GridResult r = grid_refine([](const Vec& v) { return std::abs(v[0] - M_PI); },
                                             GridSpec({0.0}, {10.0}, 101), rounds);
            CHECK(r.min <= prev + 1e-15);
            prev = r.min;
        }
    }
}

TEST_CASE("determinism: identical reruns are bit-identical") {
    auto obj = [](const Vec& v) { return std::abs(v[0] - 1.234567); };
    const GridResult a = grid_refine(obj, GridSpec({-5.0}, {5.0}, 777), 4);
    const GridResult b = grid_refine(obj, GridSpec({-5.0}, {5.0}, 777), 4);
    CHECK(a.argmin[0] == b.argmin[0]);
    CHECK(a.min == b.min);
}

TEST_CASE("oracle budget caps node counts") {
    setenv("PMOREAU_ORACLE_BUDGET", "1000", 1);
    CHECK(oracle_budget() == 1000);
    CHECK_THROWS_AS(GridSpec({0.0, 0.0}, {1.0, 1.0}, 101), std::invalid_argument);
    unsetenv("PMOREAU_ORACLE_BUDGET");
    CHECK(oracle_budget() == 10'000'000);
    CHECK_NOTHROW(GridSpec({0.0, 0.0}, {1.0, 1.0}, 101));
}
