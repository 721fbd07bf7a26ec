// End-to-end acceptance run: one line per guaranteed property, nonzero exit
// when any of them fails.
#include <cstdio>
#include <string>
#include <vector>

#include "pmy/verify.hpp"

int main() {
    const pmy::VerificationReport report = pmy::run_verification(42);

    auto find = [&](const std::string& name) -> const pmy::CheckResult* {
        for (const auto& r : report.results)
            if (r.name == name) return &r;
        return nullptr;
    };

    const std::vector<std::pair<std::string, std::string>> criteria = {
        {"duality map characterization", "duality_map_characterization"},
        {"proximal Euler-Lagrange certification", "euler_lagrange_certification"},
        {"envelope value identity", "assertion_i_identity"},
        {"sandwich and eps-monotonicity", "sandwich_eps_monotonicity"},
        {"value convergence bound", "value_convergence_bound"},
        {"eps-derivative formula", "eps_derivative_fd"},
        {"directional derivative formula", "gateaux_directional"},
        {"minimal section selection", "minimal_section"},
        {"envelope conjugate formula", "conjugate_formula"},
        {"Mosco convergence suite", "mosco_suite"},
        {"Hamilton-Jacobi residual", "hj_residual"},
        {"minimizing movement scheme", "flow_scheme"},
    };

    bool all = true;
    int idx = 0;
    for (const auto& [label, name] : criteria) {
        ++idx;
        const pmy::CheckResult* r = find(name);
        const bool ok = r != nullptr && r->passed;
        all = all && ok;
        std::printf("criterion %2d %-40s %s\n", idx, label.c_str(), ok ? "pass" : "FAIL");
        if (r != nullptr && !ok) std::printf("    %s\n", r->detail.c_str());
    }

    // determinism: a rerun with the same seed must serialize identically
    const std::string a = pmy::verification_to_json(report).dump();
    const std::string b = pmy::verification_to_json(pmy::run_verification(42)).dump();
    const bool deterministic = a == b;
    all = all && deterministic;
    std::printf("criterion %2d %-40s %s\n", ++idx, "byte-identical reruns",
                deterministic ? "pass" : "FAIL");

    if (!report.all_passed()) {
        for (const auto& r : report.results)
            if (!r.passed) std::printf("supporting check failed: %s (%s)\n", r.name.c_str(),
                                       r.detail.c_str());
        all = false;
    }
    return all ? 0 : 1;
}
