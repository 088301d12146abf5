#pragma once

#include <string>
#include <vector>

#include "errors.hpp"

namespace cohfluct {

// Probability vector of diagonal coefficients of a pure state in the
// reference basis. Amplitudes and phases are never stored: pure-state
// convertibility under (strictly) incoherent operations depends on the
// diagonal alone, so this is the whole state as far as the engine is
// concerned. Immutable after construction.
class DiagonalState {
public:
    // Validates entries >= 0 and sum == 1 within `tol` (absolute).
    explicit DiagonalState(std::vector<double> probs, std::string label = "",
                           double tol = 1e-12);

    int dim() const { return static_cast<int>(probs_.size()); }
    const std::vector<double>& probs() const { return probs_; }
    double operator[](int i) const { return probs_[static_cast<size_t>(i)]; }
    const std::string& label() const { return label_; }

    // Smallest entry above `tol` (the smallest nonzero coefficient).
    double min_positive(double tol = 1e-12) const;

    // True when all entries above `tol` are equal within `tol`.
    bool uniform_on_support(double tol = 1e-12) const;

private:
    std::vector<double> probs_;
    std::string label_;
};

// Uniform vector 1/d: diagonal of the maximally coherent state of dimension d.
DiagonalState max_coherent(int d);

// -sum p_i ln p_i in nats, with 0 ln 0 == 0.
double shannon_entropy(const DiagonalState& p);

// Relative entropy of coherence of a pure state: equals the Shannon entropy
// of its diagonal. All coherence values in this library are in nats; divide
// by ln 2 for the bits-denominated (distillable-coherence) convention.
double c_rel_pure(const DiagonalState& p);

// Number of entries strictly above tol.
int diagonal_rank(const DiagonalState& p, double tol = 1e-12);

// Renyi entropy S_alpha = sgn(alpha) ln(sum_i p_i^alpha) / (1 - alpha), nats.
// alpha == 1 delegates to shannon_entropy. For alpha <= 0 zero entries are
// excluded (support convention); at alpha == 0 this returns ln(rank) with
// sgn taken as +1.
double renyi_entropy(const DiagonalState& p, double alpha);

}  // namespace cohfluct
