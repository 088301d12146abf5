#pragma once

#include <string>
#include <vector>

#include "protocol.hpp"

namespace cohfluct {

enum class Relation { equals, leq, geq };

// One evaluated fluctuation result: lhs RELATION rhs, with the measured
// residual against the stated tolerance.
struct TheoremReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    Relation relation = Relation::equals;
    double residual = 0.0;
    double tolerance = 0.0;
    bool holds = false;
};

// Integral fluctuation relation: <e^(w - ln q_j + ln p_i)> = 1 over P(i,j,w).
// Exact-grid couplings only.
TheoremReport integral_ft(const Coupling& c, double tol = 1e-10);

// Second law: <w> <= C_rel(p) - C_rel(q).
TheoremReport second_law(const Coupling& c, double tol = 1e-10);

// Third law: sum of e^w over the realised support of P(w) (threshold 1e-12)
// is at least q_min / (d' p_min). The report's rhs carries the bound; the
// support size is implicit in the marginal.
TheoremReport third_law(const Coupling& c, double tol = 1e-10);

// Jarzynski analogue: <e^w> = d/d' for a final state uniform on its support.
// Throws PreconditionError when q is not uniform on its support.
TheoremReport jarzynski(const Coupling& c, double tol = 1e-10);

// Tail bound P(w >= ln(d/d') + r) <= e^{-r}, r > 0; same precondition as
// the Jarzynski analogue.
TheoremReport tail_bound(const Coupling& c, double r, double tol = 1e-10);

// Crooks analogue: P(w) / P_rev(-w) = e^{-w} d/d' when both final states are
// uniform on their supports. Residual is the max over supported w of
// |P(w) e^w d'/d - P_rev(-w)|.
TheoremReport crooks(const Coupling& forward, const ReverseCoupling& reverse,
                     double tol = 1e-10);

// Strict Renyi catalytic condition sampled on a finite alpha grid:
// (S_a(p) - ln d)/|a| > (S_a(q) - ln d)/|a| at every grid point. A
// necessary-condition sampler, not a proof over all real alpha.
bool renyi_catalytic(const DiagonalState& p, const DiagonalState& q, int d,
                     const std::vector<double>& alpha_grid);

// 40 log-spaced points in +-[1e-2, 50] (0 and 1 excluded).
std::vector<double> default_alpha_grid();

struct EntropyMajorisationDiagnostic {
    bool majorised = false;
    bool entropy_ok = false;  // C_rel(p) >= C_rel(q)
    bool agree = false;
};

// Compares the majorisation criterion with the entropy-only criterion and
// flags disagreement (for d >= 3 the entropy ordering is strictly weaker).
EntropyMajorisationDiagnostic entropy_vs_majorisation(const DiagonalState& p,
                                                      const DiagonalState& q);

}  // namespace cohfluct
