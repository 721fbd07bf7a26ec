#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pmy/space.hpp"

using namespace pmy;

TEST_CASE("norm values") {
    CHECK(norm(SpaceSpec::euclidean(2), {3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(norm(SpaceSpec::q_norm(2, 3.0), {1.0, 1.0}) ==
          doctest::Approx(std::pow(2.0, 1.0 / 3.0)).epsilon(1e-14));
    CHECK(norm(SpaceSpec::euclidean(3), {0.0, 0.0, 0.0}) == 0.0);
    CHECK(norm(SpaceSpec::weighted_euclidean({4.0, 1.0}), {1.0, 0.0}) ==
          doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("dual norm values") {
    CHECK(dual_norm(SpaceSpec::euclidean(2), {3.0, 4.0}) ==
          doctest::Approx(5.0).epsilon(1e-14));
    CHECK(dual_norm(SpaceSpec::q_norm(2, 3.0), {1.0, 1.0}) ==
          doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-14));
    CHECK(dual_norm(SpaceSpec::q_norm(2, 1.5), {0.0, 0.0}) == 0.0);
}

TEST_CASE("dual exponent identity") {
    for (double q : {1.2, 1.5, 2.0, 3.0, 7.0}) {
        const SpaceSpec s = SpaceSpec::q_norm(2, q);
        CHECK(1.0 / q + 1.0 / s.dual_exponent() == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("duality map examples") {
    const SpaceSpec e2 = SpaceSpec::euclidean(2);
    SUBCASE("p=3 on the axis") {
        const Vec xi = duality_map_p(e2, 3.0, {2.0, 0.0});
        CHECK(xi[0] == doctest::Approx(4.0).epsilon(1e-14));
        CHECK(xi[1] == doctest::Approx(0.0));
        CHECK(dot(xi, {2.0, 0.0}) == doctest::Approx(8.0).epsilon(1e-14));
        CHECK(std::pow(dual_norm(e2, xi), 1.5) == doctest::Approx(8.0).epsilon(1e-13));
    }
    SUBCASE("zero vector maps to zero for every family and p") {
        for (double p : {1.5, 2.0, 3.0}) {
            for (const SpaceSpec& s : {SpaceSpec::euclidean(2), SpaceSpec::q_norm(2, 3.0),
                                       SpaceSpec::weighted_euclidean({1.0, 2.0})}) {
                const Vec xi = duality_map_p(s, p, {0.0, 0.0});
                CHECK(xi[0] == 0.0);
                CHECK(xi[1] == 0.0);
            }
        }
    }
    SUBCASE("p=2 euclidean is the identity") {
        const Vec xi = duality_map_p(e2, 2.0, {1.0, 2.0});
        CHECK(xi[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(xi[1] == doctest::Approx(2.0).epsilon(1e-15));
    }
    SUBCASE("finite differences of ||.||^p / p") {
        for (double p : {1.5, 2.5}) {
            for (const SpaceSpec& s :
                 {SpaceSpec::euclidean(2), SpaceSpec::q_norm(2, 1.5)}) {
                const Vec v = {0.7, -1.3};
                const Vec xi = duality_map_p(s, p, v);
                const double h = 1e-6;
                for (int a = 0; a < 2; ++a) {
                    Vec vp = v, vm = v;
                    vp[a] += h;
                    vm[a] -= h;
                    const double fd = (std::pow(norm(s, vp), p) - std::pow(norm(s, vm), p)) /
                                      (p * 2.0 * h);
                    CHECK(xi[a] == doctest::Approx(fd).epsilon(1e-7));
                }
            }
        }
    }
}

TEST_CASE("monotonicity gap examples") {
    const SpaceSpec e2 = SpaceSpec::euclidean(2);
    SUBCASE("identical arguments") {
        const auto [lhs, rhs] = duality_monotonicity_gap(e2, 2.0, {1.3, -0.4}, {1.3, -0.4});
        CHECK(lhs == doctest::Approx(0.0));
        CHECK(rhs == doctest::Approx(0.0));
    }
    SUBCASE("p=2 unit step") {
        const auto [lhs, rhs] = duality_monotonicity_gap(e2, 2.0, {1.0, 0.0}, {0.0, 0.0});
        CHECK(lhs == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(rhs == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("p=3 collinear") {
        const auto [lhs, rhs] = duality_monotonicity_gap(e2, 3.0, {2.0, 0.0}, {1.0, 0.0});
        CHECK(lhs == doctest::Approx(3.0).epsilon(1e-13));
        CHECK(rhs == doctest::Approx(3.0).epsilon(1e-13));
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(SpaceSpec::q_norm(2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SpaceSpec::q_norm(0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(SpaceSpec::weighted_euclidean({1.0, -2.0}), std::invalid_argument);
    CHECK_THROWS_AS(PowerParams(1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(PowerParams(2.0, 0.0), std::invalid_argument);
    const PowerParams params(3.0, 0.5);
    CHECK(params.p_star == doctest::Approx(1.5).epsilon(1e-15));
}
