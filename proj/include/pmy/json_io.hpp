#pragma once

#include <string>

#include "pmy/convex_fn.hpp"
#include "pmy/envelope.hpp"
#include "pmy/flow.hpp"
#include "pmy/hj.hpp"
#include "pmy/mosco.hpp"

#include <json.hpp>

namespace pmy {

using json = nlohmann::json;

/// Raised on malformed problem specs; carries the offending field path.
struct SchemaError : std::runtime_error {
    std::string path;
    SchemaError(std::string path_, const std::string& msg)
        : std::runtime_error(path_ + ": " + msg), path(std::move(path_)) {}
};

// {"dim": n, "norm": "euclidean" | {"q": 3.0} | {"weights": [..]}}
SpaceSpec space_from_json(const json& j);
json space_to_json(const SpaceSpec& space);

// {"fn": "one_norm"}, {"fn": "quadratic", "A": .., "b": .., "c": ..}, ...
ConvexFn fn_from_json(const json& j, const SpaceSpec& space);

// {"space": .., "fn": .., "p": .., "eps": .., "u": [..]}
struct ProblemSpec {
    SpaceSpec space;
    ConvexFn fn;
    double p = 2.0;
    double eps = 1.0;
    Vec u;
};
ProblemSpec problem_from_json(const json& j);

json prox_solution_to_json(const ProxSolution& sol);
ProxSolution prox_solution_from_json(const json& j);

json mosco_report_to_json(const MoscoReport& report);
json flow_trajectory_to_json(const FlowTrajectory& traj);
json field_to_json(const SpaceTimeField& field);

std::string field_to_csv(const SpaceTimeField& field);
std::string flow_trajectory_to_csv(const FlowTrajectory& traj, const ConvexFn& energy,
                                   double p);

// 17 significant digits, so determinism is byte-testable
std::string format_double(double x);

}  // namespace pmy
