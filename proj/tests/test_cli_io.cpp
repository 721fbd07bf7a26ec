#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pmy/json_io.hpp"

using namespace pmy;

TEST_CASE("space round-trip") {
    SUBCASE("euclidean") {
        const SpaceSpec s = space_from_json(json::parse(R"({"dim": 2, "norm": "euclidean"})"));
        CHECK(s.dim == 2);
        CHECK(norm(s, {3.0, 4.0}) == doctest::Approx(5.0));
        CHECK(norm(space_from_json(space_to_json(s)), {3.0, 4.0}) == doctest::Approx(5.0));
    }
    SUBCASE("q-norm") {
        const SpaceSpec s = space_from_json(json::parse(R"({"dim": 2, "norm": {"q": 3.0}})"));
        CHECK(norm(s, {1.0, 1.0}) == doctest::Approx(std::pow(2.0, 1.0 / 3.0)));
        CHECK(norm(space_from_json(space_to_json(s)), {1.0, 1.0}) ==
              doctest::Approx(std::pow(2.0, 1.0 / 3.0)));
    }
    SUBCASE("weighted") {
        const SpaceSpec s =
            space_from_json(json::parse(R"({"dim": 2, "norm": {"weights": [4.0, 1.0]}})"));
        CHECK(norm(s, {1.0, 0.0}) == doctest::Approx(2.0));
    }
}

TEST_CASE("schema errors carry a field path") {
    auto path_of = [](const json& j) {
        try {
            problem_from_json(j);
        } catch (const SchemaError& e) {
            return e.path;
        }
        return std::string("<no error>");
    };
    CHECK(path_of(json::parse(R"({})")) == "space");
    CHECK(path_of(json::parse(R"({"space": {"norm": "euclidean"}})")) == "space/dim");
    CHECK(path_of(json::parse(R"({"space": {"dim": 0, "norm": "euclidean"}})")) == "space/dim");
    CHECK(path_of(json::parse(
              R"({"space": {"dim": 1, "norm": "taxicab"}})")) == "space/norm");
    CHECK(path_of(json::parse(
              R"({"space": {"dim": 1, "norm": "euclidean"}, "fn": {"fn": "nope"},
                  "p": 2, "eps": 1, "u": [0]})")) == "fn/fn");
    CHECK(path_of(json::parse(
              R"({"space": {"dim": 1, "norm": "euclidean"}, "fn": {"fn": 7},
                  "p": 2, "eps": 1, "u": [0]})")) == "fn/fn");
    CHECK(path_of(json::parse(
              R"({"space": {"dim": 1, "norm": "euclidean"}, "fn": {"fn": "one_norm"},
                  "p": 2, "eps": 1, "u": [0, 1]})")) == "u");
    CHECK(path_of(json::parse(
              R"({"space": {"dim": 1, "norm": "euclidean"}, "fn": {"fn": "one_norm"},
                  "p": 2, "eps": 1, "u": "zero"})")) == "u");
    CHECK(path_of(json::parse(
              R"({"space": {"dim": 1, "norm": "euclidean"}, "fn": {"fn": "one_norm"},
                  "p": 1.0, "eps": 1, "u": [0]})")) == "p");
    CHECK(path_of(json::parse(
              R"({"space": {"dim": 1, "norm": "euclidean"}, "fn": {"fn": "one_norm"},
                  "p": 2, "eps": 1, "u": [0, "x"]})")) == "u/1");
}

TEST_CASE("function specs build the catalog") {
    const SpaceSpec e1 = SpaceSpec::euclidean(1);
    CHECK(fn_from_json(json::parse(R"({"fn": "one_norm"})"), e1).evaluate({-2.0}) ==
          doctest::Approx(2.0));
    CHECK(fn_from_json(json::parse(R"({"fn": "quadratic", "A": [[2.0]], "b": [1.0], "c": 0.5})"),
                       e1)
              .evaluate({1.0}) == doctest::Approx(2.5));
    CHECK(fn_from_json(json::parse(R"({"fn": "indicator_box", "lo": [-1], "hi": [1]})"), e1)
              .evaluate({2.0}) == kInf);
    CHECK(fn_from_json(json::parse(R"({"fn": "max_affine", "pieces": [[1, 0], [2, 0]]})"), e1)
              .evaluate({1.5}) == doctest::Approx(3.0));
    CHECK(fn_from_json(json::parse(R"({"fn": "power_of_norm", "r": 3.0})"), e1)
              .evaluate({2.0}) == doctest::Approx(8.0 / 3.0));
    CHECK(fn_from_json(json::parse(R"({"fn": "zero"})"), e1).evaluate({9.0}) == 0.0);
}

TEST_CASE("problem spec end to end") {
    const ProblemSpec spec = problem_from_json(json::parse(
        R"({"space": {"dim": 1, "norm": "euclidean"},
            "fn": {"fn": "one_norm"}, "p": 2.0, "eps": 1.0, "u": [3.0]})"));
    const ProxSolution sol = prox(spec.fn, spec.space, PowerParams(spec.p, spec.eps), spec.u);
    CHECK(sol.minimizer[0] == doctest::Approx(2.0).epsilon(1e-12));
    const ProxSolution back = prox_solution_from_json(prox_solution_to_json(sol));
    CHECK(back.minimizer[0] == sol.minimizer[0]);
    CHECK(back.envelope_value == sol.envelope_value);
    CHECK(back.derivative[0] == sol.derivative[0]);
    CHECK(back.optimality_gap == sol.optimality_gap);
}

TEST_CASE("doubles print with 17 significant digits") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(-2.5) == "-2.5");
    CHECK(std::stod(format_double(M_PI)) == M_PI);
    CHECK(std::stod(format_double(1e300)) == 1e300);
}
