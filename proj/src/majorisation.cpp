#include "majorisation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

namespace cohfluct {

namespace {

std::vector<int> descending_order(const std::vector<double>& v) {
    std::vector<int> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return v[static_cast<size_t>(a)] > v[static_cast<size_t>(b)];
    });
    return idx;
}

bool try_augment(int r, const std::vector<std::vector<char>>& adj,
                 const std::vector<char>& col_banned, std::vector<int>& match_col,
                 std::vector<char>& visited) {
    int d = static_cast<int>(adj.size());
    for (int c = 0; c < d; ++c) {
        if (!adj[static_cast<size_t>(r)][static_cast<size_t>(c)] ||
            col_banned[static_cast<size_t>(c)] || visited[static_cast<size_t>(c)]) {
            continue;
        }
        visited[static_cast<size_t>(c)] = 1;
        if (match_col[static_cast<size_t>(c)] < 0 ||
            try_augment(match_col[static_cast<size_t>(c)], adj, col_banned, match_col, visited)) {
            match_col[static_cast<size_t>(c)] = r;
            return true;
        }
    }
    return false;
}

// Can every not-yet-fixed row be matched into a not-banned column?
bool rows_matchable(const std::vector<std::vector<char>>& adj,
                    const std::vector<char>& col_banned, const std::vector<char>& row_done) {
    int d = static_cast<int>(adj.size());
    std::vector<int> match_col(static_cast<size_t>(d), -1);
    for (int r = 0; r < d; ++r) {
        if (row_done[static_cast<size_t>(r)]) continue;
        std::vector<char> visited(static_cast<size_t>(d), 0);
        if (!try_augment(r, adj, col_banned, match_col, visited)) return false;
    }
    return true;
}

// Lexicographically smallest perfect matching (as the sequence m[0..d-1] of
// matched columns), or nullopt when no perfect matching exists.
std::optional<std::vector<int>> lex_matching(const std::vector<std::vector<char>>& adj) {
    int d = static_cast<int>(adj.size());
    std::vector<char> col_banned(static_cast<size_t>(d), 0), row_done(static_cast<size_t>(d), 0);
    std::vector<int> m(static_cast<size_t>(d), -1);
    for (int r = 0; r < d; ++r) {
        bool found = false;
        for (int c = 0; c < d && !found; ++c) {
            if (!adj[static_cast<size_t>(r)][static_cast<size_t>(c)] ||
                col_banned[static_cast<size_t>(c)]) {
                continue;
            }
            col_banned[static_cast<size_t>(c)] = 1;
            row_done[static_cast<size_t>(r)] = 1;
            if (rows_matchable(adj, col_banned, row_done)) {
                m[static_cast<size_t>(r)] = c;
                found = true;
            } else {
                col_banned[static_cast<size_t>(c)] = 0;
                row_done[static_cast<size_t>(r)] = 0;
            }
        }
        if (!found) return std::nullopt;
    }
    return m;
}

// One null vector of A (columns M, rows R), or nullopt if A has full column
// rank at the working precision. Full Gauss-Jordan; sizes here are tiny.
std::optional<std::vector<double>> null_vector(std::vector<std::vector<double>> A) {
    const size_t n_rows = A.size();
    const size_t n_cols = A.empty() ? 0 : A[0].size();
    std::vector<int> pivot_row_of_col(n_cols, -1);
    size_t r = 0;
    for (size_t c = 0; c < n_cols && r < n_rows; ++c) {
        size_t piv = r;
        for (size_t i = r + 1; i < n_rows; ++i) {
            if (std::abs(A[i][c]) > std::abs(A[piv][c])) piv = i;
        }
        if (std::abs(A[piv][c]) < 1e-11) continue;  // free column
        std::swap(A[piv], A[r]);
        double inv = 1.0 / A[r][c];
        for (size_t j = c; j < n_cols; ++j) A[r][j] *= inv;
        for (size_t i = 0; i < n_rows; ++i) {
            if (i == r || A[i][c] == 0.0) continue;
            double f = A[i][c];
            for (size_t j = c; j < n_cols; ++j) A[i][j] -= f * A[r][j];
        }
        pivot_row_of_col[c] = static_cast<int>(r);
        ++r;
    }
    for (size_t c = 0; c < n_cols; ++c) {
        if (pivot_row_of_col[c] >= 0) continue;
        std::vector<double> x(n_cols, 0.0);
        x[c] = 1.0;
        for (size_t pc = 0; pc < n_cols; ++pc) {
            if (pivot_row_of_col[pc] >= 0) {
                x[pc] = -A[static_cast<size_t>(pivot_row_of_col[pc])][c];
            }
        }
        return x;
    }
    return std::nullopt;
}

// Caratheodory reduction: a convex combination of permutation matrices over
// the Birkhoff polytope never needs more than (d-1)^2 + 1 vertices. Transfer
// weight along a null direction of [vec(P_m); 1] until a term drops out.
void reduce_terms(std::vector<PermutationTerm>& terms, int d) {
    const size_t bound = static_cast<size_t>((d - 1) * (d - 1) + 1);
    while (terms.size() > bound) {
        const size_t M = terms.size();
        std::vector<std::vector<double>> A(static_cast<size_t>(d * d) + 1,
                                           std::vector<double>(M, 0.0));
        for (size_t m = 0; m < M; ++m) {
            for (int r = 0; r < d; ++r) {
                A[static_cast<size_t>(r * d + terms[m].perm[static_cast<size_t>(r)])][m] = 1.0;
            }
            A[static_cast<size_t>(d * d)][m] = 1.0;
        }
        auto lambda_opt = null_vector(std::move(A));
        if (!lambda_opt) break;
        std::vector<double>& lambda = *lambda_opt;
        auto pick_step = [&](double sign) {
            double t = std::numeric_limits<double>::infinity();
            int idx = -1;
            for (size_t m = 0; m < M; ++m) {
                double l = sign * lambda[m];
                if (l > 1e-14) {
                    double ratio = terms[m].weight / l;
                    if (ratio < t) {
                        t = ratio;
                        idx = static_cast<int>(m);
                    }
                }
            }
            return std::pair<double, int>(t, idx);
        };
        auto [t, idx] = pick_step(1.0);
        double sign = 1.0;
        if (idx < 0) {
            std::tie(t, idx) = pick_step(-1.0);
            sign = -1.0;
            if (idx < 0) break;
        }
        for (size_t m = 0; m < M; ++m) terms[m].weight -= t * sign * lambda[m];
        terms[static_cast<size_t>(idx)].weight = 0.0;
        terms.erase(std::remove_if(terms.begin(), terms.end(),
                                   [](const PermutationTerm& pt) { return pt.weight <= 1e-14; }),
                    terms.end());
    }
}

}  // namespace

Bistochastic::Bistochastic(std::vector<std::vector<double>> rows, double tol)
    : dim_(static_cast<int>(rows.size())), rows_(std::move(rows)) {
    if (dim_ == 0) throw ValidationError("bistochastic matrix must be nonempty");
    std::vector<double> col_sum(static_cast<size_t>(dim_), 0.0);
    for (int r = 0; r < dim_; ++r) {
        const auto& row = rows_[static_cast<size_t>(r)];
        if (static_cast<int>(row.size()) != dim_) {
            throw ValidationError("bistochastic matrix must be square");
        }
        double row_sum = 0.0;
        for (int c = 0; c < dim_; ++c) {
            double v = row[static_cast<size_t>(c)];
            if (!(v >= 0.0)) {
                std::ostringstream os;
                os << "bistochastic matrix: entry (" << r << "," << c << ") = " << v
                   << " is negative";
                throw ValidationError(os.str());
            }
            row_sum += v;
            col_sum[static_cast<size_t>(c)] += v;
        }
        if (std::abs(row_sum - 1.0) > tol) {
            std::ostringstream os;
            os << "bistochastic matrix: row " << r << " sums to " << row_sum;
            throw ValidationError(os.str());
        }
    }
    for (int c = 0; c < dim_; ++c) {
        if (std::abs(col_sum[static_cast<size_t>(c)] - 1.0) > tol) {
            std::ostringstream os;
            os << "bistochastic matrix: column " << c << " sums to "
               << col_sum[static_cast<size_t>(c)];
            throw ValidationError(os.str());
        }
    }
}

Bistochastic Bistochastic::identity(int d) {
    std::vector<std::vector<double>> rows(static_cast<size_t>(d),
                                          std::vector<double>(static_cast<size_t>(d), 0.0));
    for (int r = 0; r < d; ++r) rows[static_cast<size_t>(r)][static_cast<size_t>(r)] = 1.0;
    return Bistochastic(std::move(rows));
}

Bistochastic Bistochastic::flat(int d) {
    std::vector<std::vector<double>> rows(
        static_cast<size_t>(d), std::vector<double>(static_cast<size_t>(d), 1.0 / d));
    return Bistochastic(std::move(rows));
}

Bistochastic Bistochastic::permutation(const std::vector<int>& perm) {
    int d = static_cast<int>(perm.size());
    std::vector<char> seen(static_cast<size_t>(d), 0);
    for (int v : perm) {
        if (v < 0 || v >= d || seen[static_cast<size_t>(v)]) {
            throw ValidationError("permutation is not a bijection");
        }
        seen[static_cast<size_t>(v)] = 1;
    }
    std::vector<std::vector<double>> rows(static_cast<size_t>(d),
                                          std::vector<double>(static_cast<size_t>(d), 0.0));
    for (int r = 0; r < d; ++r) {
        rows[static_cast<size_t>(r)][static_cast<size_t>(perm[static_cast<size_t>(r)])] = 1.0;
    }
    return Bistochastic(std::move(rows));
}

PermutationMixture::PermutationMixture(std::vector<PermutationTerm> terms, double tol)
    : terms_(std::move(terms)) {
    if (terms_.empty()) throw ValidationError("permutation mixture must be nonempty");
    int d = static_cast<int>(terms_[0].perm.size());
    double sum = 0.0;
    for (const auto& t : terms_) {
        if (t.weight < 0.0) throw ValidationError("permutation mixture: negative weight");
        if (static_cast<int>(t.perm.size()) != d) {
            throw ValidationError("permutation mixture: inconsistent dimensions");
        }
        std::vector<char> seen(static_cast<size_t>(d), 0);
        for (int v : t.perm) {
            if (v < 0 || v >= d || seen[static_cast<size_t>(v)]) {
                throw ValidationError("permutation mixture: term is not a bijection");
            }
            seen[static_cast<size_t>(v)] = 1;
        }
        sum += t.weight;
    }
    if (std::abs(sum - 1.0) > tol) {
        std::ostringstream os;
        os << "permutation mixture: weights sum to " << sum;
        throw ValidationError(os.str());
    }
    size_t bound = static_cast<size_t>((d - 1) * (d - 1) + 1);
    if (terms_.size() > bound) {
        std::ostringstream os;
        os << "permutation mixture: " << terms_.size() << " terms exceed bound " << bound;
        throw ValidationError(os.str());
    }
}

int PermutationMixture::dim() const { return static_cast<int>(terms_[0].perm.size()); }

Bistochastic PermutationMixture::to_matrix() const {
    int d = dim();
    std::vector<std::vector<double>> rows(static_cast<size_t>(d),
                                          std::vector<double>(static_cast<size_t>(d), 0.0));
    for (const auto& t : terms_) {
        for (int r = 0; r < d; ++r) {
            rows[static_cast<size_t>(r)][static_cast<size_t>(t.perm[static_cast<size_t>(r)])] +=
                t.weight;
        }
    }
    return Bistochastic(std::move(rows), 1e-9);
}

bool is_majorised(const DiagonalState& p, const DiagonalState& q, double tol) {
    if (p.dim() != q.dim()) {
        throw ValidationError("is_majorised: dimension mismatch");
    }
    std::vector<double> pd = p.probs(), qd = q.probs();
    std::sort(pd.begin(), pd.end(), std::greater<double>());
    std::sort(qd.begin(), qd.end(), std::greater<double>());
    double sp = 0.0, sq = 0.0;
    for (size_t k = 0; k < pd.size(); ++k) {
        sp += pd[k];
        sq += qd[k];
        if (sq + tol < sp) return false;
    }
    return std::abs(sp - sq) <= tol;
}

Bistochastic hlp_transport(const DiagonalState& p, const DiagonalState& q) {
    int d = p.dim();
    if (d != q.dim()) throw ValidationError("hlp_transport: dimension mismatch");

    auto order_p = descending_order(p.probs());
    auto order_q = descending_order(q.probs());
    std::vector<double> pd(static_cast<size_t>(d)), v(static_cast<size_t>(d));
    for (int r = 0; r < d; ++r) {
        pd[static_cast<size_t>(r)] = p[order_p[static_cast<size_t>(r)]];
        v[static_cast<size_t>(r)] = q[order_q[static_cast<size_t>(r)]];
    }
    {
        double sp = 0.0, sq = 0.0;
        for (int k = 0; k < d; ++k) {
            sp += pd[static_cast<size_t>(k)];
            sq += v[static_cast<size_t>(k)];
            if (sq + 1e-12 < sp) {
                std::ostringstream os;
                os << "hlp_transport: p is not majorised by q (prefix " << k << ": " << sq
                   << " < " << sp << ")";
                throw MajorisationError(os.str(), k);
            }
        }
    }

    // M accumulates (T_m ... T_1) P_q, starting from the sorting permutation
    // of q; the T-transform chain drives the sorted copy of q onto that of p.
    std::vector<std::vector<double>> M(static_cast<size_t>(d),
                                       std::vector<double>(static_cast<size_t>(d), 0.0));
    for (int r = 0; r < d; ++r) {
        M[static_cast<size_t>(r)][static_cast<size_t>(order_q[static_cast<size_t>(r)])] = 1.0;
    }

    const double eps = 1e-15;
    for (int iter = 0; iter < d - 1; ++iter) {
        int j = -1;
        for (int idx = d - 1; idx >= 0; --idx) {
            if (v[static_cast<size_t>(idx)] > pd[static_cast<size_t>(idx)] + eps) {
                j = idx;
                break;
            }
        }
        if (j < 0) break;
        int k = -1;
        for (int idx = j + 1; idx < d; ++idx) {
            if (v[static_cast<size_t>(idx)] < pd[static_cast<size_t>(idx)] - eps) {
                k = idx;
                break;
            }
        }
        if (k < 0) break;
        double excess = v[static_cast<size_t>(j)] - pd[static_cast<size_t>(j)];
        double deficit = pd[static_cast<size_t>(k)] - v[static_cast<size_t>(k)];
        double delta = std::min(excess, deficit);
        double gap = v[static_cast<size_t>(j)] - v[static_cast<size_t>(k)];
        double lambda = 1.0 - delta / gap;
        if (delta == excess) {
            v[static_cast<size_t>(j)] = pd[static_cast<size_t>(j)];
            v[static_cast<size_t>(k)] += delta;
        } else {
            v[static_cast<size_t>(j)] -= delta;
            v[static_cast<size_t>(k)] = pd[static_cast<size_t>(k)];
        }
        for (int c = 0; c < d; ++c) {
            double a = M[static_cast<size_t>(j)][static_cast<size_t>(c)];
            double b = M[static_cast<size_t>(k)][static_cast<size_t>(c)];
            M[static_cast<size_t>(j)][static_cast<size_t>(c)] = lambda * a + (1.0 - lambda) * b;
            M[static_cast<size_t>(k)][static_cast<size_t>(c)] = (1.0 - lambda) * a + lambda * b;
        }
    }

    // Undo the sorting of p: B = P_p^T M.
    std::vector<std::vector<double>> B(static_cast<size_t>(d));
    for (int r = 0; r < d; ++r) {
        B[static_cast<size_t>(order_p[static_cast<size_t>(r)])] =
            std::move(M[static_cast<size_t>(r)]);
    }
    return Bistochastic(std::move(B), 1e-10);
}

PermutationMixture birkhoff(const Bistochastic& B, double tol) {
    int d = B.dim();
    auto residual = B.rows();
    std::vector<PermutationTerm> terms;
    const int max_iter = d * d + 8;
    for (int iter = 0; iter < max_iter; ++iter) {
        double max_entry = 0.0;
        for (const auto& row : residual) {
            for (double v : row) max_entry = std::max(max_entry, v);
        }
        if (max_entry <= tol) break;
        std::vector<std::vector<char>> adj(static_cast<size_t>(d),
                                           std::vector<char>(static_cast<size_t>(d), 0));
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) {
                adj[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                    residual[static_cast<size_t>(r)][static_cast<size_t>(c)] > tol ? 1 : 0;
            }
        }
        auto m = lex_matching(adj);
        if (!m) {
            throw NumericError(
                "birkhoff: no perfect matching on the positive support before the residual "
                "dropped below tolerance (tolerance too tight for this matrix)");
        }
        double w = std::numeric_limits<double>::infinity();
        for (int r = 0; r < d; ++r) {
            w = std::min(w,
                         residual[static_cast<size_t>(r)][static_cast<size_t>((*m)[static_cast<size_t>(r)])]);
        }
        for (int r = 0; r < d; ++r) {
            double& cell =
                residual[static_cast<size_t>(r)][static_cast<size_t>((*m)[static_cast<size_t>(r)])];
            cell -= w;
            if (cell < 0.0) cell = 0.0;
        }
        terms.push_back(PermutationTerm{w, std::move(*m)});
    }
    if (terms.empty()) {
        throw NumericError("birkhoff: matrix is numerically zero at this tolerance");
    }
    reduce_terms(terms, d);
    double total = 0.0;
    for (const auto& t : terms) total += t.weight;
    if (std::abs(total - 1.0) > 1e-12) {
        for (auto& t : terms) t.weight /= total;
    }
    return PermutationMixture(std::move(terms), std::max(1e-12, 4 * d * tol));
}

DiagonalState apply_transport(const Bistochastic& B, const DiagonalState& v) {
    int d = B.dim();
    if (v.dim() != d) throw ValidationError("apply_transport: dimension mismatch");
    std::vector<double> out(static_cast<size_t>(d), 0.0);
    for (int r = 0; r < d; ++r) {
        double acc = 0.0;
        for (int c = 0; c < d; ++c) acc += B.at(r, c) * v[c];
        out[static_cast<size_t>(r)] = acc;
    }
    return DiagonalState(std::move(out), v.label(), 1e-9);
}

Bistochastic dual(const Bistochastic& B) {
    int d = B.dim();
    std::vector<std::vector<double>> rows(static_cast<size_t>(d),
                                          std::vector<double>(static_cast<size_t>(d), 0.0));
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) rows[static_cast<size_t>(c)][static_cast<size_t>(r)] = B.at(r, c);
    }
    return Bistochastic(std::move(rows));
}

}  // namespace cohfluct
