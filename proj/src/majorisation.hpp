#pragma once

#include <vector>

#include "diagonal_state.hpp"

namespace cohfluct {

// Square nonnegative matrix whose rows and columns each sum to 1.
class Bistochastic {
public:
    // Validates shape, nonnegativity and row/column sums within tol.
    Bistochastic(std::vector<std::vector<double>> rows, double tol = 1e-12);

    static Bistochastic identity(int d);
    static Bistochastic flat(int d);
    // perm[r] is the source column of row r: entry (r, perm[r]) = 1.
    static Bistochastic permutation(const std::vector<int>& perm);

    int dim() const { return dim_; }
    double at(int r, int c) const { return rows_[static_cast<size_t>(r)][static_cast<size_t>(c)]; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }

private:
    int dim_;
    std::vector<std::vector<double>> rows_;
};

struct PermutationTerm {
    double weight;
    std::vector<int> perm;  // row r takes from column perm[r]
};

// Convex combination of permutation matrices: the diagonal action of a unital
// map built from permutations. Term count never exceeds (d-1)^2 + 1.
class PermutationMixture {
public:
    explicit PermutationMixture(std::vector<PermutationTerm> terms, double tol = 1e-12);

    const std::vector<PermutationTerm>& terms() const { return terms_; }
    int dim() const;
    Bistochastic to_matrix() const;

private:
    std::vector<PermutationTerm> terms_;
};

// True iff p is majorised by q: every descending prefix sum of q dominates
// that of p within tol, and the totals agree within tol.
bool is_majorised(const DiagonalState& p, const DiagonalState& q, double tol = 1e-12);

// Constructive transport: returns bistochastic B with p = B q (entry-wise
// within 1e-12), built from at most d-1 T-transforms on the sorted copies
// with the sorting permutations composed in. Throws MajorisationError with
// the violated prefix index if p is not majorised by q.
Bistochastic hlp_transport(const DiagonalState& p, const DiagonalState& q);

// Birkhoff-von Neumann decomposition by repeated perfect-matching extraction
// on the positive-support bipartite graph (entries > tol), peeling the
// minimum entry along the matching; ties broken by the lexicographically
// smallest matching. Reconstruction error < tol; at most (d-1)^2 + 1 terms.
PermutationMixture birkhoff(const Bistochastic& B, double tol = 1e-13);

// B . v as a probability vector (diagonal action of the unital map).
DiagonalState apply_transport(const Bistochastic& B, const DiagonalState& v);

// Transpose: the diagonal action of the dual map. Bistochastic again.
Bistochastic dual(const Bistochastic& B);

}  // namespace cohfluct
