#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pmy/convex_fn.hpp"
#include "pmy/envelope.hpp"

namespace pmy {

/// An indexed family f_n with its declared limit f.
struct FunctionSequence {
    std::function<ConvexFn(int)> member;  // index n >= 1
    ConvexFn limit;
    std::string label;
};

struct NodeFinding {
    Vec node;
    double margin = 0.0;  // sign convention depends on the check
    bool violated = false;
};

struct MoscoReport {
    std::string check;
    std::string fixture;
    std::vector<NodeFinding> findings;
    int violations() const {
        int v = 0;
        for (const auto& f : findings) v += f.violated ? 1 : 0;
        return v;
    }
};

/// Weak-liminf surrogate: for each grid node u, a forcing sequence
/// u_n = argmin_v { f_n(v) + n ||v - u||^2 } is localized by grid refinement,
/// and the margin f_n(u_n) - f(u) is extrapolated in 1/n from the two largest
/// indices. Violation when the extrapolated limit drops below -tol. Nodes
/// with f(u) = +inf instead require the forcing values to escape (stay away
/// from u or diverge).
MoscoReport liminf_check(const FunctionSequence& seq, const GridSpec& grid, int n_max,
                         double tol);

/// Recovery surrogate: for each grid node u with f(u) finite, the candidate
/// hat_u_n = argmin { max(f_n(v) - f(u), 0) + 1e-3 ||v - u|| } over a shrinking
/// neighborhood of u (grid-refined); violation when f_n(hat_u_n) exceeds
/// f(u) + tol on the upper half of the index range.
MoscoReport recovery_check(const FunctionSequence& seq, const GridSpec& grid, int n_max,
                           double tol);

struct SupGapRow {
    int n;
    double sup_gap;
};

/// sup over grid of |f_n^eps(u) - f^eps(u)| for n = 1..n_max.
std::vector<SupGapRow> envelope_preserves(const FunctionSequence& seq, const SpaceSpec& space,
                                          const PowerParams& params, const GridSpec& grid,
                                          int n_max);

struct DiagonalReport {
    std::vector<SupGapRow> sup_gap;        // over in-domain nodes of the limit
    std::vector<SupGapRow> divergence_min; // min over out-of-domain nodes, sup_gap field
                                           // holds min f_n^{eps_n}(u); empty when the
                                           // limit is finite everywhere on the grid
};

/// Diagonal Mosco check along eps_schedule(n) -> 0.
DiagonalReport diagonal_convergence(const FunctionSequence& seq, const SpaceSpec& space,
                                    double p, const std::function<double(int)>& eps_schedule,
                                    const GridSpec& grid, int n_max);

struct SuperlinearityRow {
    double radius;
    double min_ratio;  // inf over eps_set and 16 directions of f^eps(v)/R at ||v|| = R
};

std::vector<SuperlinearityRow> superlinearity_profile(const ConvexFn& f, const SpaceSpec& space,
                                                      double p,
                                                      const std::vector<double>& eps_set,
                                                      const std::vector<double>& radii);

// ---- shipped fixtures ----------------------------------------------------

FunctionSequence shifted_one_norm_sequence();     // f_n = |v - 1/n| -> |v|
FunctionSequence scaled_quadratic_sequence();     // f_n = (1+1/n) v^2/2 -> v^2/2
FunctionSequence shrinking_box_sequence();        // [-1-1/n, 1+1/n] -> [-1, 1]
FunctionSequence indicator_point_sequence();      // constant indicator of {0}
FunctionSequence converging_max_affine_sequence();// slopes (1+1/n, -1) -> (1, -1)

std::vector<FunctionSequence> mosco_fixtures();

}  // namespace pmy
