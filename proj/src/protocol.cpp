#include "protocol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace cohfluct {

namespace {

constexpr double kSupportTol = 1e-12;

// ln of a sum given the logs of its terms; -inf for an empty sum.
double log_sum_exp(const std::vector<double>& log_terms) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double t : log_terms) mx = std::max(mx, t);
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double t : log_terms) s += std::exp(t - mx);
    return mx + std::log(s);
}

void check_window_fits(const Coupling& c, const WindowSpec& w) {
    int need = std::max(std::abs(c.f_lo()), c.f_hi());
    if (w.f_max < need) {
        std::ostringstream os;
        os << "window f_max = " << w.f_max << " smaller than the coupling's f range (|f| up to "
           << need << ")";
        throw WindowError(os.str());
    }
}

}  // namespace

WindowSpec WindowSpec::with(int n, int f_max) {
    if (f_max < 0) throw ValidationError("window: f_max must be >= 0");
    int N = n - 2 * f_max;
    if (N < 1) {
        std::ostringstream os;
        os << "window: n = " << n << " too small for f_max = " << f_max << "; minimum n is "
           << 2 * f_max + 1;
        throw ValidationError(os.str());
    }
    return WindowSpec{n, f_max, N, f_max, n - f_max};
}

WindowSpec make_window(int n, const Coupling& c) { return WindowSpec::with(n, c.f_max()); }

double JointDiagonal::total_mass() const {
    double s = 0.0;
    for (double v : mass_) s += v;
    return s;
}

std::pair<JointDiagonal, JointDiagonal> build_joint_states(const Coupling& c,
                                                           const WindowSpec& w) {
    check_window_fits(c, w);
    int d_sys = std::max(c.p().dim(), c.q().dim());
    JointDiagonal psi(d_sys, w.n), phi(d_sys, w.n);
    double inv = 1.0 / (w.N + 1);

    for (int j = 0; j < c.q().dim(); ++j) {
        if (c.q()[j] <= kSupportTol) continue;
        for (int xp = w.s_lo; xp <= w.s_hi; ++xp) phi.mass(j, xp) = c.q()[j] * inv;
    }
    // p_{i,f} = sum_j P(i,f|j) q_j, spread over the window shifted by -f.
    std::map<std::pair<int, int>, double> p_if;
    for (const auto& e : c.entries()) {
        p_if[{e.i, e.f}] += e.value * c.q()[e.j];
    }
    for (const auto& [key, v] : p_if) {
        auto [i, f] = key;
        for (int xp = w.s_lo; xp <= w.s_hi; ++xp) {
            psi.mass(i, xp - f) += v * inv;
        }
    }
    return {std::move(psi), std::move(phi)};
}

BlockTransition::BlockTransition(Coupling c, WindowSpec w) : c_(std::move(c)), w_(w) {
    check_window_fits(c_, w_);
    const auto& res = c_.residuals();
    if (res.r1 > 1e-9) {
        std::ostringstream os;
        os << "build_transition: Condition 1 residual " << res.r1 << " above 1e-9";
        throw ValidationError(os.str());
    }
    double c2_high = c_.mode() == GridMode::floor_discretised ? res.c2_excess : res.r2;
    if (c2_high > 1e-9) {
        std::ostringstream os;
        os << "build_transition: Condition 2 violation (row mass exceeds 1 by " << c2_high << ")";
        throw ValidationError(os.str());
    }

    d_sys_ = std::max(c_.p().dim(), c_.q().dim());
    row_slack_.assign(static_cast<size_t>(d_sys_) * (w_.n + 1), 1.0);
    for (const auto& e : c_.entries()) {
        double contrib = e.value * std::exp(e.f * c_.delta_w());
        int x_lo = std::max(0, w_.s_lo - e.f);
        int x_hi = std::min(w_.n, w_.s_hi - e.f);
        for (int x = x_lo; x <= x_hi; ++x) {
            row_slack_[static_cast<size_t>(e.i) * (w_.n + 1) + x] -= contrib;
        }
    }
    double min_slack = 0.0;
    for (double& s : row_slack_) {
        min_slack = std::min(min_slack, s);
        if (s < 0.0 && s > -1e-11) s = 0.0;  // round interior rows to exact slack 0
    }
    if (min_slack < -1e-9) {
        std::ostringstream os;
        os << "build_transition: Condition 2 violation (collapsed row mass exceeds 1 by "
           << -min_slack << ")";
        throw ValidationError(os.str());
    }

    // Completion spreads each row's slack uniformly over every dense column
    // outside the support of the final joint diagonal:
    //   count = d_sys * mu + (d_sys - |supp q|) * W,
    // with mu the strict-exterior label count and W the window label count.
    // Kept in log space throughout; the count can dwarf double range.
    int supp_q = 0;
    for (int j = 0; j < c_.q().dim(); ++j) {
        if (c_.q()[j] > kSupportTol) ++supp_q;
    }
    int u = c_.u();
    std::vector<double> terms;
    for (int x = 0; x <= w_.n; ++x) {
        if (x < w_.s_lo || x > w_.s_hi) {
            terms.push_back(std::log(static_cast<double>(d_sys_)) + log_multiplicity(u, w_.n, x));
        } else if (d_sys_ > supp_q) {
            terms.push_back(std::log(static_cast<double>(d_sys_ - supp_q)) +
                            log_multiplicity(u, w_.n, x));
        }
    }
    log_completion_cols_ = log_sum_exp(terms);
}

double BlockTransition::window_block(int i, int x, int j, int xp) const {
    if (xp < w_.s_lo || xp > w_.s_hi) return 0.0;
    if (x < 0 || x > w_.n) return 0.0;
    return c_.value(i, j, xp - x);
}

BlockTransition build_transition(const Coupling& c, const WindowSpec& w) {
    return BlockTransition(c, w);
}

double verify_transport(const BlockTransition& g, const JointDiagonal& phiN,
                        const JointDiagonal& psiN) {
    const WindowSpec& w = g.window();
    const Coupling& c = g.coupling();
    JointDiagonal predicted(psiN.d(), w.n);
    for (const auto& e : c.entries()) {
        for (int xp = w.s_lo; xp <= w.s_hi; ++xp) {
            predicted.mass(e.i, xp - e.f) += e.value * phiN.mass(e.j, xp);
        }
    }
    double err = 0.0;
    for (int i = 0; i < psiN.d(); ++i) {
        for (int x = 0; x <= w.n; ++x) {
            err = std::max(err, std::abs(predicted.mass(i, x) - psiN.mass(i, x)));
        }
    }
    return err;
}

Coupling forward_protocol(const BlockTransition& g, const Battery& b) {
    const Coupling& c = g.coupling();
    const WindowSpec& w = g.window();
    if (b.u() != c.u() || b.n() != w.n) {
        throw ValidationError("forward_protocol: battery does not match the transition");
    }
    int lo = b.support_lo(), hi = b.support_hi();
    if (lo < w.s_lo || hi > w.s_hi) {
        std::ostringstream os;
        os << "forward_protocol: battery support [" << lo << "," << hi
           << "] escapes the window [" << w.s_lo << "," << w.s_hi << "]";
        throw WraparoundError(os.str());
    }
    std::vector<CouplingEntry> out;
    for (const auto& e : c.entries()) {
        double acc = 0.0;
        for (int xp = lo; xp <= hi; ++xp) {
            acc += b.alpha_at(xp) * g.window_block(e.i, xp - e.f, e.j, xp);
        }
        out.push_back(CouplingEntry{e.i, e.j, e.f, acc});
    }
    return Coupling(c.p(), c.q(), c.u(), c.mode(), std::move(out));
}

ReverseCoupling::ReverseCoupling(std::vector<Entry> entries, DiagonalState p_prime,
                                 DiagonalState q_prime, int u, double delta_w)
    : entries_(std::move(entries)), p_prime_(std::move(p_prime)), q_prime_(std::move(q_prime)),
      u_(u), delta_w_(delta_w) {
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
        if (a.j != b.j) return a.j < b.j;
        if (a.i != b.i) return a.i < b.i;
        return a.f < b.f;
    });
    std::vector<double> per_i(static_cast<size_t>(q_prime_.dim()), 0.0);
    std::vector<double> per_j(static_cast<size_t>(p_prime_.dim()), 0.0);
    for (const auto& e : entries_) {
        per_i[static_cast<size_t>(e.i)] += e.value;
        per_j[static_cast<size_t>(e.j)] += e.value * std::exp(-e.f * delta_w_);
    }
    r1_ = 0.0;
    for (int i = 0; i < q_prime_.dim(); ++i) {
        if (q_prime_[i] > kSupportTol) {
            r1_ = std::max(r1_, std::abs(per_i[static_cast<size_t>(i)] - 1.0));
        }
    }
    r2_ = 0.0;
    for (int j = 0; j < p_prime_.dim(); ++j) {
        if (p_prime_[j] > kSupportTol) {
            r2_ = std::max(r2_, std::abs(per_j[static_cast<size_t>(j)] - 1.0));
        }
    }
}

double ReverseCoupling::value(int j, int i, int f) const {
    for (const auto& e : entries_) {
        if (e.j == j && e.i == i && e.f == f) return e.value;
    }
    return 0.0;
}

std::vector<std::pair<int, double>> ReverseCoupling::distribution() const {
    std::map<int, double> acc;
    for (const auto& e : entries_) {
        acc[-e.f] += e.value * q_prime_[e.i];
    }
    return {acc.begin(), acc.end()};
}

ReverseCoupling reverse_protocol(const BlockTransition& g, const Battery& b) {
    const Coupling& c = g.coupling();
    const WindowSpec& w = g.window();
    if (b.u() != c.u() || b.n() != w.n) {
        throw ValidationError("reverse_protocol: battery does not match the transition");
    }
    int np = w.N - 2 * w.f_max;
    if (np < 1) {
        std::ostringstream os;
        os << "reverse_protocol: inner window width N' = " << np << " below 1 (increase n)";
        throw WindowError(os.str());
    }
    int sp_lo = w.s_lo + w.f_max, sp_hi = w.s_hi - w.f_max;
    int lo = b.support_lo(), hi = b.support_hi();
    if (lo < sp_lo || hi > sp_hi) {
        std::ostringstream os;
        os << "reverse_protocol: battery support [" << lo << "," << hi
           << "] escapes the inner window [" << sp_lo << "," << sp_hi << "]";
        throw WraparoundError(os.str());
    }

    std::vector<ReverseCoupling::Entry> rev;
    for (const auto& e : c.entries()) {
        double scale = std::exp(e.f * c.delta_w());
        double acc = 0.0;
        for (int xpp = lo; xpp <= hi; ++xpp) {
            acc += b.alpha_at(xpp) * scale * g.window_block(e.i, xpp, e.j, xpp + e.f);
        }
        rev.push_back(ReverseCoupling::Entry{e.j, e.i, e.f, acc});
    }

    // Reverse final marginal: uniform over the support of the forward p.
    int d_rank = diagonal_rank(c.p());
    std::vector<double> qp(static_cast<size_t>(c.p().dim()), 0.0);
    for (int i = 0; i < c.p().dim(); ++i) {
        if (c.p()[i] > kSupportTol) qp[static_cast<size_t>(i)] = 1.0 / d_rank;
    }
    DiagonalState q_prime(std::move(qp), "", 1e-9);
    std::vector<double> pp(static_cast<size_t>(c.q().dim()), 0.0);
    for (const auto& e : rev) {
        pp[static_cast<size_t>(e.j)] += e.value * q_prime[e.i];
    }
    DiagonalState p_prime(std::move(pp), "", 1e-6);
    return ReverseCoupling(std::move(rev), std::move(p_prime), std::move(q_prime), c.u(),
                           c.delta_w());
}

OverlapResult overlap_to_ideal(const JointDiagonal& psiN, const DiagonalState& p,
                               const WindowSpec& w) {
    double overlap = 0.0;
    double inv_n1 = 1.0 / (w.n + 1);
    for (int i = 0; i < p.dim(); ++i) {
        if (p[i] <= 0.0) continue;
        for (int x = 0; x <= w.n; ++x) {
            double m = psiN.mass(i, x);
            if (m > 0.0) overlap += std::sqrt(p[i] * inv_n1 * m);
        }
    }
    double bound = 1.0 / (1.0 + 2.0 * w.f_max / (w.N + 1));
    return OverlapResult{overlap, bound};
}

}  // namespace cohfluct
