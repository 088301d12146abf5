#pragma once

#include <utility>
#include <vector>

#include "battery.hpp"
#include "coupling.hpp"

namespace cohfluct {

// Battery window S = [f_max, n - f_max] of width N+1, N = n - 2 f_max.
// Shifting S by +-f_max stays inside [0, n] by construction.
struct WindowSpec {
    int n;
    int f_max;
    int N;
    int s_lo;
    int s_hi;

    static WindowSpec with(int n, int f_max);
    bool contains(int x) const { return x >= s_lo && x <= s_hi; }
};

// Window sized for a coupling: f_max = max |f| over its support.
WindowSpec make_window(int n, const Coupling& c);

// Collapsed joint diagonal over (system index, battery level), stored as the
// probability MASS per cell: m_x times the per-label diagonal value, so the
// exponentially large multiplicities never appear. Total mass is 1.
class JointDiagonal {
public:
    JointDiagonal(int d, int n) : d_(d), n_(n), mass_(static_cast<size_t>(d) * (n + 1), 0.0) {}

    int d() const { return d_; }
    int n() const { return n_; }
    double mass(int k, int x) const { return mass_[static_cast<size_t>(k) * (n_ + 1) + x]; }
    double& mass(int k, int x) { return mass_[static_cast<size_t>(k) * (n_ + 1) + x]; }
    double total_mass() const;

private:
    int d_;
    int n_;
    std::vector<double> mass_;
};

// Collapsed initial/final joint states (psiN, phiN): phiN is the product
// state with the battery uniform on S; psiN folds the coupling's fluctuation
// structure into the battery marginal.
std::pair<JointDiagonal, JointDiagonal> build_joint_states(const Coupling& c,
                                                           const WindowSpec& w);

// Window-blocked bistochastic transition in the collapsed representation.
// Window columns (x' in S) carry P(i,x|j,x') = P(i, f=x'-x | j); every column
// outside the support of the final joint diagonal is completed uniformly per
// row with row_slack / (number of completion columns), kept in log space.
// Column sums inside the window are 1; collapsed row masses never exceed 1.
class BlockTransition {
public:
    BlockTransition(Coupling c, WindowSpec w);

    const Coupling& coupling() const { return c_; }
    const WindowSpec& window() const { return w_; }
    int d_sys() const { return d_sys_; }

    // P(i, x | j, x') for x' in S; zero outside the window or the f support.
    double window_block(int i, int x, int j, int xp) const;
    // 1 - sum_{j, x' in S} e^{(x'-x) dw} P(i,x|j,x').
    double row_slack(int i, int x) const {
        return row_slack_[static_cast<size_t>(i) * (w_.n + 1) + x];
    }
    // ln of the number of completion columns (dense count, log space).
    double log_completion_cols() const { return log_completion_cols_; }

private:
    Coupling c_;
    WindowSpec w_;
    int d_sys_;
    std::vector<double> row_slack_;
    double log_completion_cols_;
};

BlockTransition build_transition(const Coupling& c, const WindowSpec& w);

// Max over (i, x) of | sum_{j, x' in S} P(i,x|j,x') q_j/(N+1) - psiN(i,x) |,
// the collapsed statement that the transition maps phiN onto psiN.
double verify_transport(const BlockTransition& g, const JointDiagonal& phiN,
                        const JointDiagonal& psiN);

// Five-step forward protocol: prepare |j> with the dephased battery, measure
// the level, apply the transition, measure system and level again, record f.
// P(i,f|j) = sum_{x'} alpha_{x'} Q(i, x'-f | j, x'). The battery profile must
// be supported inside S; for any such profile the output reproduces the
// generating coupling exactly (uniform windows are the canonical choice).
Coupling forward_protocol(const BlockTransition& g, const Battery& b);

// Conditional distribution of the reverse protocol, built from the dual map:
// entries value(j, i, f) = P_rev(j, -f dw | i). The reverse final marginal q'
// is uniform on supp(p); p' is the induced initial marginal.
class ReverseCoupling {
public:
    struct Entry {
        int j;
        int i;
        int f;  // forward grid index; the reverse protocol extracts -f dw
        double value;
    };

    ReverseCoupling(std::vector<Entry> entries, DiagonalState p_prime, DiagonalState q_prime,
                    int u, double delta_w);

    const std::vector<Entry>& entries() const { return entries_; }
    const DiagonalState& p_prime() const { return p_prime_; }
    const DiagonalState& q_prime() const { return q_prime_; }
    int u() const { return u_; }
    double delta_w() const { return delta_w_; }
    double value(int j, int i, int f) const;

    // Normalisation residual: max_i |sum_{j,f} P_rev(j,-f|i) - 1|.
    double r1() const { return r1_; }
    // Reverse Condition 2 residual: max_j |sum_{i,f} P_rev e^{-f dw} - 1|.
    double r2() const { return r2_; }

    // P_rev over its own variable g = -f: pairs (g, probability), sorted.
    std::vector<std::pair<int, double>> distribution() const;

private:
    std::vector<Entry> entries_;
    DiagonalState p_prime_;
    DiagonalState q_prime_;
    int u_;
    double delta_w_;
    double r1_;
    double r2_;
};

// Reverse protocol: P_rev(j,-f|i) = sum_{x''} alpha_{x''} e^{f dw}
// Q(i, x''|j, x''+f). The profile must sit inside the inner window
// S' = [s_lo+f_max, s_hi-f_max] (width N'+1, N' = N-2 f_max) so every probed
// column stays inside S; for a uniform profile on S' the result equals
// e^{f dw} P(i,f|j) exactly.
ReverseCoupling reverse_protocol(const BlockTransition& g, const Battery& b);

struct OverlapResult {
    double overlap;
    double bound;  // 1 / (1 + 2 f_max / (N+1))
};

// Fidelity between psiN and the ideal product state with the battery spread
// over all n+1 levels, computed in collapsed form, with the analytic bound.
OverlapResult overlap_to_ideal(const JointDiagonal& psiN, const DiagonalState& p,
                               const WindowSpec& w);

}  // namespace cohfluct
