#include "simplex.hpp"

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace cohfluct {

std::optional<std::vector<double>> phase_one_feasible(
    const std::vector<std::vector<double>>& A, const std::vector<double>& b, double tol,
    int max_iterations) {
    const int m = static_cast<int>(A.size());
    const int n = m == 0 ? 0 : static_cast<int>(A[0].size());
    if (m == 0) return std::vector<double>();

    // Tableau: columns [0, n) originals, [n, n+m) artificials, n+m the rhs.
    // Rows [0, m) constraints, row m the phase-1 objective (min sum of
    // artificials, kept as reduced costs).
    std::vector<std::vector<double>> T(static_cast<size_t>(m) + 1,
                                       std::vector<double>(static_cast<size_t>(n + m) + 1, 0.0));
    for (int r = 0; r < m; ++r) {
        double sign = b[static_cast<size_t>(r)] < 0.0 ? -1.0 : 1.0;
        for (int c = 0; c < n; ++c) {
            T[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                sign * A[static_cast<size_t>(r)][static_cast<size_t>(c)];
        }
        T[static_cast<size_t>(r)][static_cast<size_t>(n + r)] = 1.0;
        T[static_cast<size_t>(r)][static_cast<size_t>(n + m)] = sign * b[static_cast<size_t>(r)];
    }
    // Objective row: z = sum of artificials => reduced costs -sum of rows.
    for (int c = 0; c <= n + m; ++c) {
        double s = 0.0;
        for (int r = 0; r < m; ++r) s += T[static_cast<size_t>(r)][static_cast<size_t>(c)];
        T[static_cast<size_t>(m)][static_cast<size_t>(c)] = -s;
    }
    for (int r = 0; r < m; ++r) T[static_cast<size_t>(m)][static_cast<size_t>(n + r)] = 0.0;

    std::vector<int> basis(static_cast<size_t>(m));
    for (int r = 0; r < m; ++r) basis[static_cast<size_t>(r)] = n + r;

    int iterations = 0;
    while (true) {
        // Bland: entering = smallest column index with negative reduced cost.
        int enter = -1;
        for (int c = 0; c < n + m; ++c) {
            if (T[static_cast<size_t>(m)][static_cast<size_t>(c)] < -tol) {
                enter = c;
                break;
            }
        }
        if (enter < 0) break;
        if (++iterations > max_iterations) {
            throw InconclusiveError("phase-1 simplex: iteration cap exceeded");
        }
        int leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < m; ++r) {
            double a = T[static_cast<size_t>(r)][static_cast<size_t>(enter)];
            if (a > tol) {
                double ratio = T[static_cast<size_t>(r)][static_cast<size_t>(n + m)] / a;
                if (ratio < best - 1e-15 ||
                    (std::abs(ratio - best) <= 1e-15 &&
                     (leave < 0 || basis[static_cast<size_t>(r)] < basis[static_cast<size_t>(leave)]))) {
                    best = ratio;
                    leave = r;
                }
            }
        }
        if (leave < 0) {
            // Phase-1 objective is bounded below by 0; an unbounded column
            // here means the tableau degenerated numerically.
            throw InconclusiveError("phase-1 simplex: unbounded pivot column");
        }
        double piv = T[static_cast<size_t>(leave)][static_cast<size_t>(enter)];
        for (int c = 0; c <= n + m; ++c) T[static_cast<size_t>(leave)][static_cast<size_t>(c)] /= piv;
        for (int r = 0; r <= m; ++r) {
            if (r == leave) continue;
            double f = T[static_cast<size_t>(r)][static_cast<size_t>(enter)];
            if (f == 0.0) continue;
            for (int c = 0; c <= n + m; ++c) {
                T[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
                    f * T[static_cast<size_t>(leave)][static_cast<size_t>(c)];
            }
        }
        basis[static_cast<size_t>(leave)] = enter;
    }

    // Objective value = -T[m][rhs] after minimisation bookkeeping.
    double objective = -T[static_cast<size_t>(m)][static_cast<size_t>(n + m)];
    if (objective > tol) return std::nullopt;

    std::vector<double> x(static_cast<size_t>(n), 0.0);
    for (int r = 0; r < m; ++r) {
        int v = basis[static_cast<size_t>(r)];
        if (v < n) {
            double val = T[static_cast<size_t>(r)][static_cast<size_t>(n + m)];
            x[static_cast<size_t>(v)] = val < 0.0 ? 0.0 : val;
        }
    }
    return x;
}

}  // namespace cohfluct
