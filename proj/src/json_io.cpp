#include "pmy/json_io.hpp"

#include <cstdio>
#include <sstream>

namespace pmy {

namespace {

const json& require(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw SchemaError(path.empty() ? key : path + "/" + key, "missing field");
    return *it;
}

double require_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number");
    return j.get<double>();
}

Vec require_vector(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array of numbers");
    Vec v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(require_number(j[i], path + "/" + std::to_string(i)));
    return v;
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

SpaceSpec space_from_json(const json& j) {
    const double dim_raw = require_number(require(j, "dim", "space"), "space/dim");
    const int dim = static_cast<int>(dim_raw);
    if (dim < 1 || dim != dim_raw) throw SchemaError("space/dim", "must be a positive integer");
    const json& norm = require(j, "norm", "space");
    try {
        if (norm.is_string()) {
            if (norm.get<std::string>() != "euclidean")
                throw SchemaError("space/norm", "unknown norm name");
            return SpaceSpec::euclidean(dim);
        }
        if (norm.is_object()) {
            if (norm.contains("q"))
                return SpaceSpec::q_norm(dim, require_number(norm["q"], "space/norm/q"));
            if (norm.contains("weights")) {
                Vec w = require_vector(norm["weights"], "space/norm/weights");
                if (static_cast<int>(w.size()) != dim)
                    throw SchemaError("space/norm/weights", "length must equal dim");
                return SpaceSpec::weighted_euclidean(std::move(w));
            }
        }
    } catch (const std::invalid_argument& e) {
        throw SchemaError("space/norm", e.what());
    }
    throw SchemaError("space/norm", "expected \"euclidean\", {\"q\": ..} or {\"weights\": [..]}");
}

json space_to_json(const SpaceSpec& space) {
    json j;
    j["dim"] = space.dim;
    switch (space.kind) {
        case NormKind::Euclidean: j["norm"] = "euclidean"; break;
        case NormKind::QNorm: j["norm"] = {{"q", space.q}}; break;
        case NormKind::WeightedEuclidean: j["norm"] = {{"weights", space.weights}}; break;
    }
    return j;
}

ConvexFn fn_from_json(const json& j, const SpaceSpec& space) {
    const json& name_j = require(j, "fn", "fn");
    if (!name_j.is_string()) throw SchemaError("fn/fn", "expected a string");
    const std::string name = name_j.get<std::string>();
    try {
        if (name == "one_norm") return one_norm(space.dim);
        if (name == "zero") return zero_fn(space.dim);
        if (name == "quadratic") {
            const json& aj = require(j, "A", "fn");
            if (!aj.is_array()) throw SchemaError("fn/A", "expected a matrix");
            std::vector<Vec> A;
            for (std::size_t r = 0; r < aj.size(); ++r)
                A.push_back(require_vector(aj[r], "fn/A/" + std::to_string(r)));
            Vec b = require_vector(require(j, "b", "fn"), "fn/b");
            const double c = j.contains("c") ? require_number(j["c"], "fn/c") : 0.0;
            return quadratic(A, b, c);
        }
        if (name == "indicator_box")
            return indicator_box(require_vector(require(j, "lo", "fn"), "fn/lo"),
                                 require_vector(require(j, "hi", "fn"), "fn/hi"));
        if (name == "indicator_point")
            return indicator_point(require_vector(require(j, "z", "fn"), "fn/z"));
        if (name == "max_affine") {
            const json& pj = require(j, "pieces", "fn");
            if (!pj.is_array() || pj.empty()) throw SchemaError("fn/pieces", "expected pieces");
            std::vector<std::pair<Vec, double>> pieces;
            for (std::size_t i = 0; i < pj.size(); ++i) {
                const std::string path = "fn/pieces/" + std::to_string(i);
                if (!pj[i].is_array() || pj[i].size() != 2)
                    throw SchemaError(path, "expected [slope, intercept]");
                Vec slope = pj[i][0].is_number() ? Vec{pj[i][0].get<double>()}
                                                 : require_vector(pj[i][0], path + "/0");
                pieces.emplace_back(std::move(slope), require_number(pj[i][1], path + "/1"));
            }
            return max_affine(pieces);
        }
        if (name == "power_of_norm")
            return power_of_norm(require_number(require(j, "r", "fn"), "fn/r"), space);
    } catch (const std::invalid_argument& e) {
        throw SchemaError("fn", e.what());
    }
    throw SchemaError("fn/fn", "unknown function name '" + name + "'");
}

ProblemSpec problem_from_json(const json& j) {
    ProblemSpec spec;
    spec.space = space_from_json(require(j, "space", ""));
    spec.fn = fn_from_json(require(j, "fn", ""), spec.space);
    spec.p = require_number(require(j, "p", ""), "p");
    spec.eps = require_number(require(j, "eps", ""), "eps");
    spec.u = require_vector(require(j, "u", ""), "u");
    if (static_cast<int>(spec.u.size()) != spec.space.dim)
        throw SchemaError("u", "length must equal space dim");
    try {
        (void)PowerParams(spec.p, spec.eps);
    } catch (const std::invalid_argument& e) {
        throw SchemaError("p", e.what());
    }
    return spec;
}

json prox_solution_to_json(const ProxSolution& sol) {
    return json{{"minimizer", sol.minimizer},
                {"envelope_value", sol.envelope_value},
                {"derivative", sol.derivative},
                {"optimality_gap", sol.optimality_gap},
                {"solver", to_string(sol.solver)},
                {"iterations", sol.iterations}};
}

ProxSolution prox_solution_from_json(const json& j) {
    ProxSolution sol;
    sol.minimizer = require_vector(require(j, "minimizer", "solution"), "solution/minimizer");
    sol.envelope_value =
        require_number(require(j, "envelope_value", "solution"), "solution/envelope_value");
    sol.derivative = require_vector(require(j, "derivative", "solution"), "solution/derivative");
    sol.optimality_gap =
        require_number(require(j, "optimality_gap", "solution"), "solution/optimality_gap");
    const std::string solver = require(j, "solver", "solution").get<std::string>();
    for (ProxSolver s : {ProxSolver::ClosedForm, ProxSolver::Ternary1d, ProxSolver::SubgradientNd,
                         ProxSolver::OracleGrid})
        if (solver == to_string(s)) sol.solver = s;
    sol.iterations = require(j, "iterations", "solution").get<int>();
    return sol;
}

json mosco_report_to_json(const MoscoReport& report) {
    json findings = json::array();
    for (const auto& f : report.findings)
        findings.push_back(
            {{"node", f.node}, {"margin", f.margin}, {"violated", f.violated}});
    return json{{"check", report.check},
                {"fixture", report.fixture},
                {"violations", report.violations()},
                {"findings", findings}};
}

json flow_trajectory_to_json(const FlowTrajectory& traj) {
    return json{{"tau", traj.tau},
                {"states", traj.states},
                {"energies", traj.energies},
                {"residuals", traj.residuals}};
}

json field_to_json(const SpaceTimeField& field) {
    json nodes = json::array();
    for (long long i = 0; i < field.x_grid.node_count(); ++i)
        nodes.push_back(field.x_grid.node(i));
    return json{{"t_values", field.t_values}, {"x_nodes", nodes}, {"values", field.values}};
}

std::string field_to_csv(const SpaceTimeField& field) {
    std::ostringstream out;
    out << "t";
    for (int a = 0; a < field.x_grid.dim(); ++a) out << ",x" << a;
    out << ",u\n";
    for (std::size_t ti = 0; ti < field.t_values.size(); ++ti) {
        for (long long i = 0; i < field.x_grid.node_count(); ++i) {
            out << format_double(field.t_values[ti]);
            for (double x : field.x_grid.node(i)) out << ',' << format_double(x);
            out << ',' << format_double(field.values[ti][static_cast<std::size_t>(i)]) << '\n';
        }
    }
    return out.str();
}

std::string flow_trajectory_to_csv(const FlowTrajectory& traj, const ConvexFn& energy,
                                   double p) {
    (void)energy;
    (void)p;
    std::ostringstream out;
    out << "n,t";
    for (std::size_t a = 0; a < traj.states.front().size(); ++a) out << ",u" << a;
    out << ",energy,residual\n";
    for (std::size_t n = 0; n < traj.states.size(); ++n) {
        out << n << ',' << format_double(n * traj.tau);
        for (double x : traj.states[n]) out << ',' << format_double(x);
        out << ',' << format_double(traj.energies[n]) << ','
            << format_double(traj.residuals[n]) << '\n';
    }
    return out.str();
}

}  // namespace pmy
