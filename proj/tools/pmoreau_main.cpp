#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pmy/verify.hpp"

namespace {

using pmy::json;

struct Options {
    std::string spec_path;
    std::string out_path;
    std::string format = "json";
    unsigned seed = 0;
};

json load_spec(const Options& opt) {
    if (opt.spec_path.empty()) throw pmy::SchemaError("--spec", "spec file required");
    std::ifstream in(opt.spec_path);
    if (!in) throw pmy::SchemaError("--spec", "cannot open '" + opt.spec_path + "'");
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw pmy::SchemaError("", "spec file is not valid JSON");
    return j;
}

pmy::GridSpec grid_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) throw pmy::SchemaError(path, "expected a grid object");
    auto vec = [&](const char* key) {
        if (!j.contains(key)) throw pmy::SchemaError(path + "/" + key, "missing field");
        if (!j[key].is_array()) throw pmy::SchemaError(path + "/" + key, "expected an array");
        pmy::Vec v;
        for (const auto& x : j[key]) {
            if (!x.is_number()) throw pmy::SchemaError(path + "/" + key, "expected numbers");
            v.push_back(x.get<double>());
        }
        return v;
    };
    int ppa = 101;
    if (j.contains("points_per_axis")) {
        if (!j["points_per_axis"].is_number_integer())
            throw pmy::SchemaError(path + "/points_per_axis", "expected an integer");
        ppa = j["points_per_axis"].get<int>();
    }
    try {
        return pmy::GridSpec(vec("lo"), vec("hi"), ppa);
    } catch (const std::invalid_argument& e) {
        throw pmy::SchemaError(path, e.what());
    }
}

void emit(const Options& opt, const std::string& payload) {
    if (opt.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + opt.out_path + "'");
    out << payload;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- subcommands ---------------------------------------------------------

int run_prox(const Options& opt) {
    const pmy::ProblemSpec spec = pmy::problem_from_json(load_spec(opt));
    const pmy::ProxSolution sol =
        pmy::prox(spec.fn, spec.space, pmy::PowerParams(spec.p, spec.eps), spec.u);
    if (opt.format == "json") {
        emit(opt, dump(pmy::prox_solution_to_json(sol)));
    } else {
        std::ostringstream out;
        out << "envelope_value,optimality_gap,solver,iterations";
        for (std::size_t i = 0; i < sol.minimizer.size(); ++i) out << ",minimizer" << i;
        for (std::size_t i = 0; i < sol.derivative.size(); ++i) out << ",derivative" << i;
        out << '\n'
            << pmy::format_double(sol.envelope_value) << ','
            << pmy::format_double(sol.optimality_gap) << ',' << pmy::to_string(sol.solver) << ','
            << sol.iterations;
        for (double x : sol.minimizer) out << ',' << pmy::format_double(x);
        for (double x : sol.derivative) out << ',' << pmy::format_double(x);
        out << '\n';
        emit(opt, out.str());
    }
    return 0;
}

int run_sweep_eps(const Options& opt) {
    const json j = load_spec(opt);
    const pmy::ProblemSpec spec = pmy::problem_from_json(j);
    if (!j.contains("eps_list") || !j["eps_list"].is_array() || j["eps_list"].size() < 2)
        throw pmy::SchemaError("eps_list", "expected an array of at least two eps values");
    std::vector<double> eps_list;
    for (const auto& x : j["eps_list"]) {
        if (!x.is_number()) throw pmy::SchemaError("eps_list", "expected numbers");
        eps_list.push_back(x.get<double>());
    }
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw pmy::SchemaError("eps_list", "must be strictly decreasing");

    const auto rows =
        pmy::convergence_profile(spec.fn, spec.space, spec.p, spec.u, eps_list);
    std::vector<double> deriv, deriv_fd;
    for (double eps : eps_list) {
        deriv.push_back(pmy::eps_derivative(spec.fn, spec.space, spec.p, spec.u, eps));
        const double h = 1e-4 * eps;
        const double hi = pmy::envelope_value(spec.fn, spec.space,
                                              pmy::PowerParams(spec.p, eps + h), spec.u);
        const double lo = pmy::envelope_value(spec.fn, spec.space,
                                              pmy::PowerParams(spec.p, eps - h), spec.u);
        deriv_fd.push_back((hi - lo) / (2.0 * h));
    }
    if (opt.format == "json") {
        json out = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i)
            out.push_back({{"eps", rows[i].eps},
                           {"envelope", rows[i].envelope},
                           {"value_gap", rows[i].value_gap},
                           {"dist", rows[i].dist},
                           {"bound", rows[i].bound},
                           {"eps_derivative", deriv[i]},
                           {"eps_derivative_fd", deriv_fd[i]}});
        emit(opt, dump(out));
    } else {
        std::ostringstream out;
        out << "eps,envelope,value_gap,dist,bound,eps_derivative,eps_derivative_fd\n";
        for (std::size_t i = 0; i < rows.size(); ++i)
            out << pmy::format_double(rows[i].eps) << ','
                << pmy::format_double(rows[i].envelope) << ','
                << pmy::format_double(rows[i].value_gap) << ','
                << pmy::format_double(rows[i].dist) << ','
                << pmy::format_double(rows[i].bound) << ','
                << pmy::format_double(deriv[i]) << ',' << pmy::format_double(deriv_fd[i])
                << '\n';
        emit(opt, out.str());
    }
    return 0;
}

int run_conjugate(const Options& opt) {
    const json j = load_spec(opt);
    const pmy::ProblemSpec spec = pmy::problem_from_json(j);
    if (!j.contains("xi_grid")) throw pmy::SchemaError("xi_grid", "missing field");
    if (!j.contains("v_grid")) throw pmy::SchemaError("v_grid", "missing field");
    const pmy::GridSpec xi_grid = grid_from_json(j["xi_grid"], "xi_grid");
    const pmy::GridSpec v_grid = grid_from_json(j["v_grid"], "v_grid");
    if (xi_grid.dim() != spec.space.dim || v_grid.dim() != spec.space.dim)
        throw pmy::SchemaError("xi_grid", "grid dim must equal space dim");

    const pmy::PowerParams params(spec.p, spec.eps);
    std::ostringstream csv;
    json rows = json::array();
    csv << "analytic,numeric,gap";
    for (int a = 0; a < xi_grid.dim(); ++a) csv << ",xi" << a;
    csv << '\n';
    for (long long i = 0; i < xi_grid.node_count(); ++i) {
        const pmy::Vec xi = xi_grid.node(i);
        const auto [analytic, numeric] =
            pmy::envelope_conjugate(spec.fn, spec.space, params, xi, v_grid);
        if (opt.format == "json") {
            rows.push_back({{"xi", xi},
                            {"analytic", analytic},
                            {"numeric", numeric},
                            {"gap", std::abs(analytic - numeric)}});
        } else {
            csv << pmy::format_double(analytic) << ',' << pmy::format_double(numeric) << ','
                << pmy::format_double(std::abs(analytic - numeric));
            for (double x : xi) csv << ',' << pmy::format_double(x);
            csv << '\n';
        }
    }
    emit(opt, opt.format == "json" ? dump(rows) : csv.str());
    return 0;
}

int run_mosco(const Options& opt) {
    const json j = load_spec(opt);
    if (!j.contains("fixture") || !j["fixture"].is_string())
        throw pmy::SchemaError("fixture", "expected a fixture name");
    const std::string name = j["fixture"].get<std::string>();
    const pmy::FunctionSequence* seq = nullptr;
    const auto fixtures = pmy::mosco_fixtures();
    for (const auto& f : fixtures)
        if (f.label == name) seq = &f;
    if (!seq) {
        std::string known;
        for (const auto& f : fixtures) known += (known.empty() ? "" : ", ") + f.label;
        throw pmy::SchemaError("fixture", "unknown fixture '" + name + "' (known: " + known + ")");
    }
    const int n_max = j.value("n_max", 64);
    const double tol = j.value("tol", 1e-6);
    if (n_max < 4) throw pmy::SchemaError("n_max", "must be >= 4");
    if (!(tol > 0.0)) throw pmy::SchemaError("tol", "must be > 0");
    const pmy::GridSpec grid = j.contains("grid") ? grid_from_json(j["grid"], "grid")
                                                  : pmy::GridSpec({-2.0}, {2.0}, 41);
    const pmy::SpaceSpec space = pmy::SpaceSpec::euclidean(1);
    const double p = j.value("p", 2.0);
    const double eps = j.value("eps", 1.0);

    const pmy::MoscoReport liminf = pmy::liminf_check(*seq, grid, n_max, tol);
    const pmy::MoscoReport recovery = pmy::recovery_check(*seq, grid, n_max, tol);
    const auto preserves =
        pmy::envelope_preserves(*seq, space, pmy::PowerParams(p, eps), grid, n_max);
    const auto diagonal = pmy::diagonal_convergence(
        *seq, space, p, [](int n) { return 1.0 / (static_cast<double>(n) * n); }, grid, n_max);

    json preserves_j = json::array();
    for (const auto& row : preserves) preserves_j.push_back({{"n", row.n}, {"sup_gap", row.sup_gap}});
    json diag_j = json::array(), div_j = json::array();
    for (const auto& row : diagonal.sup_gap) diag_j.push_back({{"n", row.n}, {"sup_gap", row.sup_gap}});
    for (const auto& row : diagonal.divergence_min)
        div_j.push_back({{"n", row.n}, {"min_value", row.sup_gap}});
    const json out = {{"fixture", name},
                      {"liminf", pmy::mosco_report_to_json(liminf)},
                      {"recovery", pmy::mosco_report_to_json(recovery)},
                      {"envelope_preserves", preserves_j},
                      {"diagonal", {{"sup_gap", diag_j}, {"divergence_min", div_j}}}};
    if (opt.format == "json") {
        emit(opt, dump(out));
    } else {
        std::ostringstream csv;
        csv << "report,index,value,violated\n";
        for (std::size_t i = 0; i < liminf.findings.size(); ++i)
            csv << "liminf," << i << ',' << pmy::format_double(liminf.findings[i].margin) << ','
                << (liminf.findings[i].violated ? 1 : 0) << '\n';
        for (std::size_t i = 0; i < recovery.findings.size(); ++i)
            csv << "recovery," << i << ',' << pmy::format_double(recovery.findings[i].margin)
                << ',' << (recovery.findings[i].violated ? 1 : 0) << '\n';
        for (const auto& row : preserves)
            csv << "envelope_preserves," << row.n << ',' << pmy::format_double(row.sup_gap)
                << ",0\n";
        for (const auto& row : diagonal.sup_gap)
            csv << "diagonal_sup_gap," << row.n << ',' << pmy::format_double(row.sup_gap)
                << ",0\n";
        for (const auto& row : diagonal.divergence_min)
            csv << "diagonal_divergence_min," << row.n << ','
                << pmy::format_double(row.sup_gap) << ",0\n";
        emit(opt, csv.str());
    }
    return 0;
}

int run_hj(const Options& opt) {
    const json j = load_spec(opt);
    const pmy::SpaceSpec space = pmy::space_from_json(
        j.contains("space") ? j["space"] : throw pmy::SchemaError("space", "missing field"));
    const pmy::ConvexFn fn = pmy::fn_from_json(
        j.contains("fn") ? j["fn"] : throw pmy::SchemaError("fn", "missing field"), space);
    if (!j.contains("p") || !j["p"].is_number())
        throw pmy::SchemaError("p", "expected a number");
    const double p = j["p"].get<double>();
    if (!j.contains("x_grid")) throw pmy::SchemaError("x_grid", "missing field");
    const pmy::GridSpec x_grid = grid_from_json(j["x_grid"], "x_grid");
    if (!j.contains("t_values") || !j["t_values"].is_array() || j["t_values"].size() < 3)
        throw pmy::SchemaError("t_values", "expected at least three t values");
    std::vector<double> ts;
    for (const auto& t : j["t_values"]) {
        if (!t.is_number()) throw pmy::SchemaError("t_values", "expected numbers");
        ts.push_back(t.get<double>());
    }
    try {
        const pmy::SpaceTimeField field = pmy::lax_oleinik(fn, space, p, x_grid, ts);
        const pmy::HjResidual res = pmy::hj_residual(field, space, p);
        if (opt.format == "json") {
            json out = pmy::field_to_json(field);
            out["residual"] = {{"max_residual", res.max_residual},
                               {"interior_count", res.interior_count},
                               {"kink_count", res.kink_count}};
            emit(opt, dump(out));
        } else {
            std::ostringstream csv;
            csv << pmy::field_to_csv(field);
            csv << "# max_residual=" << pmy::format_double(res.max_residual)
                << " interior_count=" << res.interior_count << " kink_count=" << res.kink_count
                << '\n';
            emit(opt, csv.str());
        }
    } catch (const std::invalid_argument& e) {
        throw pmy::SchemaError("t_values", e.what());
    }
    return 0;
}

int run_flow(const Options& opt) {
    const json j = load_spec(opt);
    const pmy::SpaceSpec space = pmy::space_from_json(
        j.contains("space") ? j["space"] : throw pmy::SchemaError("space", "missing field"));
    const pmy::ConvexFn fn = pmy::fn_from_json(
        j.contains("fn") ? j["fn"] : throw pmy::SchemaError("fn", "missing field"), space);
    if (!j.contains("p") || !j["p"].is_number()) throw pmy::SchemaError("p", "expected a number");
    if (!j.contains("tau") || !j["tau"].is_number())
        throw pmy::SchemaError("tau", "expected a number");
    if (!j.contains("steps") || !j["steps"].is_number_integer())
        throw pmy::SchemaError("steps", "expected an integer");
    if (!j.contains("u0") || !j["u0"].is_array())
        throw pmy::SchemaError("u0", "expected an array");
    pmy::Vec u0;
    for (const auto& x : j["u0"]) {
        if (!x.is_number()) throw pmy::SchemaError("u0", "expected numbers");
        u0.push_back(x.get<double>());
    }
    if (static_cast<int>(u0.size()) != space.dim)
        throw pmy::SchemaError("u0", "length must equal space dim");
    const double p = j["p"].get<double>();
    const double tau = j["tau"].get<double>();
    const int steps = j["steps"].get<int>();
    pmy::FlowTrajectory traj;
    try {
        traj = pmy::minimizing_movement(fn, space, p, tau, steps, u0);
    } catch (const std::invalid_argument& e) {
        throw pmy::SchemaError("tau", e.what());
    } catch (const std::domain_error& e) {
        throw pmy::SchemaError("u0", e.what());
    }

    json exp_j = json::array();
    if (j.contains("exponential")) {
        const json& e = j["exponential"];
        if (!e.is_object() || !e.contains("t") || !e.contains("n_list"))
            throw pmy::SchemaError("exponential", "expected {\"t\": .., \"n_list\": [..]}");
        std::vector<int> n_list;
        for (const auto& n : e["n_list"]) {
            if (!n.is_number_integer())
                throw pmy::SchemaError("exponential/n_list", "expected integers");
            n_list.push_back(n.get<int>());
        }
        try {
            for (const auto& row : pmy::exponential_formula_check(
                     fn, space, e["t"].get<double>(), n_list, u0))
                exp_j.push_back({{"n", row.n}, {"error", row.error}});
        } catch (const std::invalid_argument& e2) {
            throw pmy::SchemaError("exponential", e2.what());
        }
    }
    if (opt.format == "json") {
        json out = pmy::flow_trajectory_to_json(traj);
        if (!exp_j.empty()) out["exponential_formula"] = exp_j;
        emit(opt, dump(out));
    } else {
        std::ostringstream csv;
        csv << pmy::flow_trajectory_to_csv(traj, fn, p);
        for (const auto& row : exp_j)
            csv << "# exponential n=" << row["n"].get<int>()
                << " error=" << pmy::format_double(row["error"].get<double>()) << '\n';
        emit(opt, csv.str());
    }
    return 0;
}

int run_verify(const Options& opt) {
    const pmy::VerificationReport report = pmy::run_verification(opt.seed);
    if (opt.format == "json") {
        emit(opt, dump(pmy::verification_to_json(report)));
    } else {
        std::ostringstream csv;
        csv << "name,passed,checks,worst,detail\n";
        for (const auto& r : report.results)
            csv << r.name << ',' << (r.passed ? 1 : 0) << ',' << r.checks << ','
                << pmy::format_double(r.worst) << ",\"" << r.detail << "\"\n";
        emit(opt, csv.str());
    }
    if (!report.all_passed()) {
        for (const auto& r : report.results)
            if (!r.passed) std::cerr << "violation: " << r.name << ": " << r.detail << '\n';
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-Moreau-Yosida regularization toolkit"};
    app.require_subcommand(1);
    Options opt;

    std::map<std::string, std::function<int(const Options&)>> handlers = {
        {"prox", run_prox},     {"sweep-eps", run_sweep_eps}, {"conjugate", run_conjugate},
        {"mosco", run_mosco},   {"hj", run_hj},               {"flow", run_flow},
        {"verify", run_verify},
    };
    const std::map<std::string, std::string> blurbs = {
        {"prox", "solve one proximal problem"},
        {"sweep-eps", "envelope profile over a decreasing eps list"},
        {"conjugate", "analytic vs numeric envelope conjugate over a xi grid"},
        {"mosco", "Mosco convergence reports for a shipped fixture"},
        {"hj", "Lax-Oleinik field and Hamilton-Jacobi residual"},
        {"flow", "minimizing-movement trajectory"},
        {"verify", "full cross-module invariant suite"},
    };
    for (const auto& [name, blurb] : blurbs) {
        CLI::App* sub = app.add_subcommand(name, blurb);
        sub->add_option("--spec", opt.spec_path, "JSON problem spec");
        sub->add_option("--out", opt.out_path, "output file (stdout when omitted)");
        sub->add_option("--format", opt.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", opt.seed, "seed for randomized invariant checks");
    }
    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return handlers.at(command)(opt);
    } catch (const pmy::SchemaError& e) {
        std::cerr << "schema error at " << (e.path.empty() ? "<root>" : e.path) << ": "
                  << e.what() << '\n';
        return 2;
    } catch (const pmy::SolverFailure& e) {
        std::cerr << "solver failure in '" << command << "': " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error in '" << command << "': " << e.what() << '\n';
        return 3;
    }
}
