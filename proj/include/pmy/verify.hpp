#pragma once

#include <string>
#include <vector>

#include "pmy/json_io.hpp"

namespace pmy {

struct CheckResult {
    std::string name;
    bool passed = false;
    long long checks = 0;   // number of individual assertions run
    double worst = 0.0;     // worst margin seen (interpretation per check)
    std::string detail;
};

struct VerificationReport {
    unsigned seed = 0;
    std::vector<CheckResult> results;
    bool all_passed() const {
        for (const auto& r : results)
            if (!r.passed) return false;
        return true;
    }
};

/// Full cross-module invariant suite at desk scale. Deterministic for a
/// fixed seed.
VerificationReport run_verification(unsigned seed);

json verification_to_json(const VerificationReport& report);

/// The fixture sweep shared by the envelope checks: catalog members across
/// spaces with base points.
struct SweepCase {
    ConvexFn fn;
    SpaceSpec space;
    Vec u;
};
std::vector<SweepCase> fixture_sweep();

}  // namespace pmy
