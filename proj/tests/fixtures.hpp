#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "coupling.hpp"
#include "diagonal_state.hpp"
#include "majorisation.hpp"

namespace fixtures {

using namespace cohfluct;

inline DiagonalState dyadic_p4() { return DiagonalState({0.5, 0.25, 0.125, 0.125}, "p4"); }
inline DiagonalState uniform4() { return max_coherent(4); }
inline DiagonalState crooks_p() { return DiagonalState({0.5, 0.25, 0.25, 0.0}, "crooks_p"); }

// Canonical dyadic coupling (1/2,1/4,1/8,1/8) -> uniform(4), u = 2.
inline Coupling canonical_d4() {
    return canonical_coupling(dyadic_p4(), uniform4(), 2);
}

// Canonical (1/2,1/2) -> (1,0): the single-fluctuation w = ln 2 case.
inline Coupling canonical_2to1() {
    return canonical_coupling(max_coherent(2), DiagonalState({1.0, 0.0}), 2);
}

// p = q = (1/2,1/2) with P(i,+1|j) = 1/6 and P(i,-1|j) = 1/3 for all i, j:
// valid, strictly non-saturating ("breathing") coupling.
inline Coupling breathing() {
    std::vector<CouplingEntry> entries;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            entries.push_back({i, j, +1, 1.0 / 6.0});
            entries.push_back({i, j, -1, 1.0 / 3.0});
        }
    }
    return explicit_coupling(max_coherent(2), max_coherent(2), entries, 2);
}

// Crooks fixture: (1/2,1/4,1/4,0) -> uniform(4), d = 3, d' = 4.
inline Coupling crooks_coupling() {
    return canonical_coupling(crooks_p(), uniform4(), 2);
}

// Canonical d=3 dyadic pair with a rank drop, small enough for the oracle.
inline Coupling canonical_d3() {
    return canonical_coupling(DiagonalState({0.5, 0.25, 0.25}),
                              DiagonalState({0.5, 0.5, 0.0}), 2);
}

// Identity coupling on a state: P(i, 0 | j) = delta_ij, no fluctuation.
// (The canonical product coupling with p = q is a different, wider table.)
inline Coupling identity_coupling(const DiagonalState& s, int u = 2) {
    std::vector<CouplingEntry> entries;
    for (int i = 0; i < s.dim(); ++i) {
        if (s[i] > 1e-12) entries.push_back({i, i, 0, 1.0});
    }
    return explicit_coupling(s, s, entries, u);
}

// Random point of the probability simplex.
inline DiagonalState random_state(int d, std::mt19937_64& rng) {
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> v(static_cast<size_t>(d));
    double sum = 0.0;
    for (double& x : v) {
        x = exp1(rng) + 1e-6;
        sum += x;
    }
    for (double& x : v) x /= sum;
    double drift = 1.0;
    for (double x : v) drift -= x;
    v[0] += drift;  // renormalise exactly
    return DiagonalState(std::move(v), "", 1e-9);
}

// Random bistochastic matrix as a mixture of at most d-1 permutations.
inline Bistochastic random_permutation_mixture(int d, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> n_terms_dist(1, std::max(1, d - 1));
    int n_terms = n_terms_dist(rng);
    std::vector<double> w(static_cast<size_t>(n_terms));
    double sum = 0.0;
    std::uniform_real_distribution<double> uni(0.05, 1.0);
    for (double& x : w) {
        x = uni(rng);
        sum += x;
    }
    for (double& x : w) x /= sum;
    std::vector<std::vector<double>> rows(static_cast<size_t>(d),
                                          std::vector<double>(static_cast<size_t>(d), 0.0));
    std::vector<int> perm(static_cast<size_t>(d));
    for (int k = 0; k < n_terms; ++k) {
        for (int r = 0; r < d; ++r) perm[static_cast<size_t>(r)] = r;
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int r = 0; r < d; ++r) {
            rows[static_cast<size_t>(r)][static_cast<size_t>(perm[static_cast<size_t>(r)])] +=
                w[static_cast<size_t>(k)];
        }
    }
    return Bistochastic(std::move(rows), 1e-9);
}

// Convolution of a coupling with a two-point kernel on the f grid that keeps
// Conditions 1-3 intact: beta_+ e^{dw} + beta_- e^{-dw} + beta_0 = 1 with
// beta_+ = beta_- e^{-dw}.
inline Coupling breathe(const Coupling& c, double beta_minus) {
    double dw = c.delta_w();
    double beta_plus = beta_minus * std::exp(-dw);
    double beta_zero = 1.0 - beta_plus - beta_minus;
    std::vector<CouplingEntry> entries;
    for (const auto& e : c.entries()) {
        entries.push_back({e.i, e.j, e.f + 1, e.value * beta_plus});
        entries.push_back({e.i, e.j, e.f, e.value * beta_zero});
        entries.push_back({e.i, e.j, e.f - 1, e.value * beta_minus});
    }
    return explicit_coupling(c.p(), c.q(), entries, c.u(), c.mode());
}

// Random valid coupling on the marginals of `base`: canonical mixed with
// randomly breathed variants.
inline Coupling random_valid_coupling(const Coupling& base, std::mt19937_64& rng) {
    double beta_max = 1.0 / (1.0 + std::exp(-base.delta_w()));
    std::uniform_real_distribution<double> beta_dist(0.05, 0.95 * beta_max);
    std::uniform_real_distribution<double> mix_dist(0.05, 0.95);
    Coupling breathed = breathe(base, beta_dist(rng));
    if (rng() % 2 == 0) breathed = breathe(breathed, beta_dist(rng));
    double t = mix_dist(rng);
    return mix({base, breathed}, {1.0 - t, t});
}

}  // namespace fixtures
