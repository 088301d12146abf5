#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "diagonal_state.hpp"

namespace cohfluct {

// How battery-coherence changes are placed on the integer grid f (w = f dw).
// exact_grid requires every ln(q_j/p_i) to be an integer multiple of dw;
// floor_discretised takes f = floor(w/dw), which downgrades Condition 2 to a
// one-sided inequality.
enum class GridMode { exact_grid, floor_discretised };

struct CouplingEntry {
    int i;
    int j;
    int f;
    double value;
};

// Residuals of the three validity conditions:
//   Condition 1: sum_{i,f} P(i,f|j) = 1            for every j in supp(q)
//   Condition 2: sum_{j,f} P(i,f|j) e^{f dw} = 1   for every i in supp(p)
//   Condition 3: sum_{j,f} P(i,f|j) q_j = p_i      for every i
// In floor mode Condition 2 is the one-sided inequality
// e^{-dw} <= sum <= 1, reported through c2_excess / c2_deficit.
struct ConditionResiduals {
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;
    bool c2_one_sided = false;
    double c2_excess = 0.0;   // max_i max(0, sum - 1)
    double c2_deficit = 0.0;  // max_i max(0, e^{-dw} - sum), floor mode only
};

// Conditional coherence-fluctuation table P(i, f | j) with w = f * delta_w,
// defined only for j in the support of q. Immutable; residuals are computed
// once at construction. Construction never enforces the conditions (so
// infeasible tables can be studied); it does reject negative values and
// out-of-range indices.
class Coupling {
public:
    Coupling(DiagonalState p, DiagonalState q, int u, GridMode mode,
             std::vector<CouplingEntry> entries);

    const DiagonalState& p() const { return p_; }
    const DiagonalState& q() const { return q_; }
    int u() const { return u_; }
    double delta_w() const { return delta_w_; }
    GridMode mode() const { return mode_; }
    const std::vector<CouplingEntry>& entries() const { return entries_; }
    const ConditionResiduals& residuals() const { return residuals_; }

    double value(int i, int j, int f) const;
    // Max |f| over the support (0 for an empty table).
    int f_max() const;
    int f_lo() const;
    int f_hi() const;

private:
    DiagonalState p_;
    DiagonalState q_;
    int u_;
    double delta_w_;
    GridMode mode_;
    std::vector<CouplingEntry> entries_;  // sorted by (i, j, f), unique
    ConditionResiduals residuals_;
};

// The product coupling P(i,f|j) = p_i at f = ln(q_j/p_i)/dw for every
// (i, j) with p_i, q_j > 0. Satisfies the three conditions identically and
// saturates the second law. In exact_grid mode, off-grid ratios raise
// GridError listing the offending (i, j) pairs.
Coupling canonical_coupling(const DiagonalState& p, const DiagonalState& q, int u,
                            GridMode mode = GridMode::exact_grid);

// A user-specified table; duplicates of the same (i, j, f) accumulate.
Coupling explicit_coupling(const DiagonalState& p, const DiagonalState& q,
                           std::vector<CouplingEntry> entries, int u,
                           GridMode mode = GridMode::exact_grid);

ConditionResiduals condition_residuals(const Coupling& c);

// P(w) over the grid: pairs (f, probability), sorted by f.
std::vector<std::pair<int, double>> marginal_w(const Coupling& c);

// Entry-wise convex combination; all inputs must share (p, q, u, mode).
Coupling mix(const std::vector<Coupling>& couplings, const std::vector<double>& weights);

struct Feasibility {
    bool feasible = false;
    std::optional<Coupling> witness;
};

// Is there any coupling on (p, q) supported on the given f values? The
// constraint set is exactly Conditions 1-3 over variables P(i,f|j) >= 0,
// solved by a phase-1 simplex at desk scale (dims <= 16, |f| <= 16).
Feasibility feasibility_lp_over(const DiagonalState& p, const DiagonalState& q,
                                const std::vector<int>& f_values, int u);

// Symmetric grid f in [-F, F].
Feasibility feasibility_lp(const DiagonalState& p, const DiagonalState& q, int F, int u);

}  // namespace cohfluct
