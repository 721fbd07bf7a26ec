#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pmy/json_io.hpp"
#include "pmy/verify.hpp"

namespace py = pybind11;
using namespace pmy;

namespace {

ProblemSpec parse_problem(const std::string& spec) {
    return problem_from_json(json::parse(spec));
}

SpaceSpec parse_space(const std::string& spec) { return space_from_json(json::parse(spec)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "p-power Moreau envelopes: proximal points, duality maps, flows";

    py::register_exception<SchemaError>(m, "SchemaError");
    py::register_exception<SolverFailure>(m, "SolverFailure");

    m.def("norm", [](const std::string& space, const Vec& v) {
        return norm(parse_space(space), v);
    });
    m.def("dual_norm", [](const std::string& space, const Vec& xi) {
        return dual_norm(parse_space(space), xi);
    });
    m.def("duality_map", [](const std::string& space, double p, const Vec& v) {
        return duality_map_p(parse_space(space), p, v);
    });

    m.def("prox", [](const std::string& spec) {
        const ProblemSpec ps = parse_problem(spec);
        const ProxSolution sol = prox(ps.fn, ps.space, PowerParams(ps.p, ps.eps), ps.u);
        return prox_solution_to_json(sol).dump();
    });
    m.def("envelope_value", [](const std::string& spec) {
        const ProblemSpec ps = parse_problem(spec);
        return envelope_value(ps.fn, ps.space, PowerParams(ps.p, ps.eps), ps.u);
    });
    m.def("eps_derivative", [](const std::string& spec) {
        const ProblemSpec ps = parse_problem(spec);
        return eps_derivative(ps.fn, ps.space, ps.p, ps.u, ps.eps);
    });
    m.def("sweep_eps", [](const std::string& spec, const std::vector<double>& eps_list) {
        const ProblemSpec ps = parse_problem(spec);
        json rows = json::array();
        for (const auto& r : convergence_profile(ps.fn, ps.space, ps.p, ps.u, eps_list))
            rows.push_back({{"eps", r.eps},
                            {"envelope", r.envelope},
                            {"value_gap", r.value_gap},
                            {"dist", r.dist},
                            {"bound", r.bound}});
        return rows.dump();
    });
    m.def("envelope_conjugate",
          [](const std::string& spec, const Vec& xi, double lo, double hi, int ppa) {
              const ProblemSpec ps = parse_problem(spec);
              Vec los(ps.space.dim, lo), his(ps.space.dim, hi);
              return envelope_conjugate(ps.fn, ps.space, PowerParams(ps.p, ps.eps), xi,
                                        GridSpec(los, his, ppa));
          });

    // eps doubles as the time step tau; u as the initial state
    m.def("minimizing_movement", [](const std::string& spec, int steps) {
        const ProblemSpec ps = parse_problem(spec);
        return flow_trajectory_to_json(
                   minimizing_movement(ps.fn, ps.space, ps.p, ps.eps, steps, ps.u))
            .dump();
    });

    m.def("lax_oleinik", [](const std::string& spec, double lo, double hi, int ppa,
                            const std::vector<double>& t_values) {
        const ProblemSpec ps = parse_problem(spec);
        Vec los(ps.space.dim, lo), his(ps.space.dim, hi);
        const SpaceTimeField field =
            lax_oleinik(ps.fn, ps.space, ps.p, GridSpec(los, his, ppa), t_values);
        json out = field_to_json(field);
        if (t_values.size() >= 3) {
            const HjResidual r = hj_residual(field, ps.space, ps.p);
            out["max_residual"] = r.max_residual;
        }
        return out.dump();
    });

    m.def("verify", [](unsigned seed) {
        return verification_to_json(run_verification(seed)).dump();
    });
}
