#pragma once

#include <optional>
#include <vector>

namespace cohfluct {

// Phase-1 primal simplex for the feasibility problem {x >= 0 : A x = b}.
// Dense tableau, Bland's rule (anti-cycling). Returns a feasible point when
// the artificial objective reaches ~0, std::nullopt when the problem is
// infeasible; throws InconclusiveError if the iteration cap is hit first.
std::optional<std::vector<double>> phase_one_feasible(
    const std::vector<std::vector<double>>& A, const std::vector<double>& b,
    double tol = 1e-9, int max_iterations = 200000);

}  // namespace cohfluct
