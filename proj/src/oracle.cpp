#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace cohfluct {

double OracleReport::max_err() const {
    return std::max({row_sum_err, col_sum_err, transport_err, forward_err, reverse_err});
}

OracleReport full_label_oracle(const Coupling& c, int u, int n) {
    if (u != 2 || c.u() != 2) {
        throw SizeCapError("full_label_oracle: only u = 2 is supported");
    }
    int d_sys = std::max(c.p().dim(), c.q().dim());
    if (n > 8 || d_sys > 3) {
        std::ostringstream os;
        os << "full_label_oracle: instance too large (n = " << n << ", d = " << d_sys
           << "; caps are n <= 8, d <= 3)";
        throw SizeCapError(os.str());
    }

    WindowSpec w = make_window(n, c);
    // u = 2 level multiplicities and label offsets.
    std::vector<int> m(static_cast<size_t>(n) + 1), off(static_cast<size_t>(n) + 1);
    int M = 0;
    for (int x = 0; x <= n; ++x) {
        m[static_cast<size_t>(x)] = 1 << x;
        off[static_cast<size_t>(x)] = M;
        M += m[static_cast<size_t>(x)];
    }
    const int D = d_sys * M;
    auto idx = [&](int k, int x, int z) { return k * M + off[static_cast<size_t>(x)] + z; };
    std::vector<int> level_of(static_cast<size_t>(M));
    for (int x = 0; x <= n; ++x) {
        for (int z = 0; z < m[static_cast<size_t>(x)]; ++z) {
            level_of[static_cast<size_t>(off[static_cast<size_t>(x)] + z)] = x;
        }
    }

    std::vector<std::vector<double>> G(static_cast<size_t>(D),
                                       std::vector<double>(static_cast<size_t>(D), 0.0));
    // Window blocks: R(i,z|j,z') = P(i, x'-x | j) / m_x for x' in S.
    for (const auto& e : c.entries()) {
        if (e.value == 0.0) continue;
        for (int xp = w.s_lo; xp <= w.s_hi; ++xp) {
            int x = xp - e.f;
            double v = e.value / m[static_cast<size_t>(x)];
            for (int z = 0; z < m[static_cast<size_t>(x)]; ++z) {
                double* row = G[static_cast<size_t>(idx(e.i, x, z))].data();
                for (int zp = 0; zp < m[static_cast<size_t>(xp)]; ++zp) {
                    row[idx(e.j, xp, zp)] += v;
                }
            }
        }
    }
    // Uniform completion over every column outside the support of the final
    // joint diagonal (j outside supp(q) or x' outside S).
    std::vector<char> support_col(static_cast<size_t>(D), 0);
    int n_support = 0;
    for (int j = 0; j < d_sys; ++j) {
        if (j >= c.q().dim() || c.q()[j] <= 1e-12) continue;
        for (int xp = w.s_lo; xp <= w.s_hi; ++xp) {
            for (int zp = 0; zp < m[static_cast<size_t>(xp)]; ++zp) {
                support_col[static_cast<size_t>(idx(j, xp, zp))] = 1;
                ++n_support;
            }
        }
    }
    const int n_completion = D - n_support;
    for (int r = 0; r < D && n_completion > 0; ++r) {
        double used = 0.0;
        for (int cidx = 0; cidx < D; ++cidx) {
            if (support_col[static_cast<size_t>(cidx)]) used += G[static_cast<size_t>(r)][static_cast<size_t>(cidx)];
        }
        double fill = (1.0 - used) / n_completion;
        for (int cidx = 0; cidx < D; ++cidx) {
            if (!support_col[static_cast<size_t>(cidx)]) G[static_cast<size_t>(r)][static_cast<size_t>(cidx)] = fill;
        }
    }

    OracleReport report;
    report.u = u;
    report.n = n;
    report.d_sys = d_sys;
    report.dense_dim = D;

    std::vector<double> col_sum(static_cast<size_t>(D), 0.0);
    for (int r = 0; r < D; ++r) {
        double rs = 0.0;
        for (int cidx = 0; cidx < D; ++cidx) {
            double v = G[static_cast<size_t>(r)][static_cast<size_t>(cidx)];
            rs += v;
            col_sum[static_cast<size_t>(cidx)] += v;
        }
        report.row_sum_err = std::max(report.row_sum_err, std::abs(rs - 1.0));
    }
    for (double cs : col_sum) {
        report.col_sum_err = std::max(report.col_sum_err, std::abs(cs - 1.0));
    }

    // Dense transport: psi = G * phi, aggregated per (i, x) block.
    auto [psi_c, phi_c] = build_joint_states(c, w);
    std::vector<double> phi_dense(static_cast<size_t>(D), 0.0);
    for (int j = 0; j < c.q().dim(); ++j) {
        if (c.q()[j] <= 1e-12) continue;
        for (int xp = w.s_lo; xp <= w.s_hi; ++xp) {
            double v = c.q()[j] / ((w.N + 1) * static_cast<double>(m[static_cast<size_t>(xp)]));
            for (int zp = 0; zp < m[static_cast<size_t>(xp)]; ++zp) {
                phi_dense[static_cast<size_t>(idx(j, xp, zp))] = v;
            }
        }
    }
    for (int k = 0; k < d_sys; ++k) {
        std::vector<double> block(static_cast<size_t>(n) + 1, 0.0);
        for (int lbl = 0; lbl < M; ++lbl) {
            int r = k * M + lbl;
            double acc = 0.0;
            const double* row = G[static_cast<size_t>(r)].data();
            for (int cidx = 0; cidx < D; ++cidx) {
                if (phi_dense[static_cast<size_t>(cidx)] != 0.0) {
                    acc += row[cidx] * phi_dense[static_cast<size_t>(cidx)];
                }
            }
            block[static_cast<size_t>(level_of[static_cast<size_t>(lbl)])] += acc;
        }
        for (int x = 0; x <= n; ++x) {
            report.transport_err = std::max(
                report.transport_err, std::abs(block[static_cast<size_t>(x)] - psi_c.mass(k, x)));
        }
    }

    // Block sums S(i,x|j,x') = sum_{z,z'} G, shared by Q and Q_rev.
    std::vector<double> block_sum(
        static_cast<size_t>(d_sys) * (n + 1) * d_sys * (n + 1), 0.0);
    auto bidx = [&](int i, int x, int j, int xp) {
        return ((static_cast<size_t>(i) * (n + 1) + x) * d_sys + j) * (n + 1) + xp;
    };
    for (int r = 0; r < D; ++r) {
        int i = r / M;
        int x = level_of[static_cast<size_t>(r % M)];
        const double* row = G[static_cast<size_t>(r)].data();
        for (int cidx = 0; cidx < D; ++cidx) {
            int j = cidx / M;
            int xp = level_of[static_cast<size_t>(cidx % M)];
            block_sum[bidx(i, x, j, xp)] += row[cidx];
        }
    }
    auto q_dense = [&](int i, int x, int j, int xp) {
        return block_sum[bidx(i, x, j, xp)] / m[static_cast<size_t>(xp)];
    };
    auto q_rev_dense = [&](int j, int xp, int i, int x) {
        return block_sum[bidx(i, x, j, xp)] / m[static_cast<size_t>(x)];
    };

    // Forward: uniform battery on S.
    BlockTransition g = build_transition(c, w);
    Battery fwd_battery = new_battery(u, n, AlphaProfile::uniform_window(w.s_lo, w.s_hi));
    Coupling collapsed_fwd = forward_protocol(g, fwd_battery);
    for (int i = 0; i < d_sys; ++i) {
        for (int j = 0; j < d_sys; ++j) {
            if (j >= c.q().dim() || c.q()[j] <= 1e-12) continue;
            for (int f = c.f_lo(); f <= c.f_hi(); ++f) {
                double dense_val = 0.0;
                for (int xp = w.s_lo; xp <= w.s_hi; ++xp) {
                    dense_val += fwd_battery.alpha_at(xp) * q_dense(i, xp - f, j, xp);
                }
                double coll = (i < c.p().dim()) ? collapsed_fwd.value(i, j, f) : 0.0;
                report.forward_err = std::max(report.forward_err, std::abs(dense_val - coll));
            }
        }
    }

    // Reverse: uniform battery on the inner window S'.
    int np = w.N - 2 * w.f_max;
    if (np < 1) {
        throw WindowError("full_label_oracle: n too small for the reverse protocol");
    }
    Battery rev_battery =
        new_battery(u, n, AlphaProfile::uniform_window(w.s_lo + w.f_max, w.s_hi - w.f_max));
    ReverseCoupling collapsed_rev = reverse_protocol(g, rev_battery);
    for (int j = 0; j < d_sys; ++j) {
        if (j >= c.q().dim() || c.q()[j] <= 1e-12) continue;
        for (int i = 0; i < std::min(d_sys, c.p().dim()); ++i) {
            for (int f = c.f_lo(); f <= c.f_hi(); ++f) {
                double dense_val = 0.0;
                for (int xpp = rev_battery.support_lo(); xpp <= rev_battery.support_hi(); ++xpp) {
                    dense_val += rev_battery.alpha_at(xpp) * q_rev_dense(j, xpp + f, i, xpp);
                }
                report.reverse_err =
                    std::max(report.reverse_err, std::abs(dense_val - collapsed_rev.value(j, i, f)));
            }
        }
    }

    return report;
}

}  // namespace cohfluct
