#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pmy/flow.hpp"

using namespace pmy;

namespace {
const SpaceSpec e1 = SpaceSpec::euclidean(1);
}

TEST_CASE("implicit Euler on the quadratic contracts geometrically") {
    const FlowTrajectory tr = minimizing_movement(quadratic_1d(1.0), e1, 2.0, 0.1, 10, {1.0});
    REQUIRE(tr.states.size() == 11);
    // U^n = u0 / (1 + tau)^n
    CHECK(tr.states[10][0] == doctest::Approx(1.0 / std::pow(1.1, 10)).epsilon(1e-12));
    CHECK(tr.states[1][0] == doctest::Approx(1.0 / 1.1).epsilon(1e-12));
    for (double r : tr.residuals) CHECK(r <= 1e-6);
}

TEST_CASE("zero energy leaves the state fixed") {
    const FlowTrajectory tr = minimizing_movement(zero_fn(1), e1, 2.0, 0.5, 5, {0.7});
    for (const Vec& u : tr.states) CHECK(u[0] == 0.7);
    for (double e : tr.energies) CHECK(e == 0.0);
}

TEST_CASE("one_norm flow reaches zero in finite time and is absorbed") {
    const FlowTrajectory tr = minimizing_movement(one_norm(1), e1, 2.0, 0.3, 5, {1.0});
    const double expect[] = {1.0, 0.7, 0.4, 0.1, 0.0, 0.0};
    for (int i = 0; i <= 5; ++i) CHECK(tr.states[i][0] == doctest::Approx(expect[i]).epsilon(1e-9));
}

TEST_CASE("energies never increase along the trajectory") {
    for (const Vec& u0 : {Vec{2.0}, Vec{-1.3}, Vec{0.0}}) {
        const FlowTrajectory tr =
            minimizing_movement(max_affine({{{1.0}, 0.0}, {{-2.0}, 0.5}}), e1, 2.0, 0.2, 8, u0);
        for (std::size_t i = 1; i < tr.energies.size(); ++i)
            CHECK(tr.energies[i] <= tr.energies[i - 1] + 1e-12);
    }
}

TEST_CASE("exponential formula") {
    SUBCASE("quadratic against e^{-t}") {
        const auto rows = exponential_formula_check(quadratic_1d(1.0), e1, 1.0,
                                                    {4, 64, 1024}, {1.0});
        // |(1 + t/n)^{-n} - e^{-t}| at t = 1, n = 1024 is about 1.8e-4
        CHECK(rows.back().error <= 5e-4);
        CHECK(rows.back().error ==
              doctest::Approx(std::pow(1.0 + 1.0 / 1024.0, -1024.0) - std::exp(-1.0))
                  .epsilon(1e-9));
        // error shrinks with n
        CHECK(rows[1].error < rows[0].error);
        CHECK(rows[2].error < rows[1].error);
    }
    SUBCASE("zero energy: error identically 0") {
        for (const auto& row : exponential_formula_check(zero_fn(1), e1, 1.0, {2, 8}, {0.4}))
            CHECK(row.error == 0.0);
    }
    SUBCASE("non-quadratic fixtures are rejected") {
        CHECK_THROWS_AS(exponential_formula_check(max_affine({{{1.0}, 0.0}, {{-2.0}, 0.5}}),
                                                  e1, 1.0, {4}, {1.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("scheme error against the steepest-descent ODE halves with tau") {
    for (double p : {2.0, 3.0}) {
        const auto coarse = ode_reference_error(quadratic_1d(1.0), p, 0.02, 50, {1.0});
        const auto fine = ode_reference_error(quadratic_1d(1.0), p, 0.01, 100, {1.0});
        const double ratio = coarse.back().error / fine.back().error;
        CHECK(ratio >= 1.6);
        CHECK(ratio <= 2.4);
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(minimizing_movement(one_norm(1), e1, 2.0, 0.0, 5, {1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(minimizing_movement(one_norm(1), e1, 2.0, 0.5, 0, {1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(minimizing_movement(indicator_box({-1.0}, {1.0}), e1, 2.0, 0.5, 3, {2.0}),
                    std::domain_error);
    CHECK_THROWS_AS(exponential_formula_check(quadratic_1d(1.0), e1, 0.0, {4}, {1.0}),
                    std::invalid_argument);
}
