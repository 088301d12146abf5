#include "coupling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "simplex.hpp"

namespace cohfluct {

namespace {

constexpr double kSupportTol = 1e-12;

std::vector<CouplingEntry> normalise_entries(std::vector<CouplingEntry> entries) {
    std::sort(entries.begin(), entries.end(), [](const CouplingEntry& a, const CouplingEntry& b) {
        if (a.i != b.i) return a.i < b.i;
        if (a.j != b.j) return a.j < b.j;
        return a.f < b.f;
    });
    std::vector<CouplingEntry> out;
    out.reserve(entries.size());
    for (const auto& e : entries) {
        if (!out.empty() && out.back().i == e.i && out.back().j == e.j && out.back().f == e.f) {
            out.back().value += e.value;
        } else {
            out.push_back(e);
        }
    }
    return out;
}

}  // namespace

Coupling::Coupling(DiagonalState p, DiagonalState q, int u, GridMode mode,
                   std::vector<CouplingEntry> entries)
    : p_(std::move(p)), q_(std::move(q)), u_(u), mode_(mode),
      entries_(normalise_entries(std::move(entries))) {
    if (u_ < 2) throw ValidationError("coupling: u must be >= 2");
    delta_w_ = std::log(static_cast<double>(u_)) - std::log(static_cast<double>(u_ - 1));
    for (const auto& e : entries_) {
        if (e.i < 0 || e.i >= p_.dim()) {
            std::ostringstream os;
            os << "coupling: entry index i = " << e.i << " out of range";
            throw ValidationError(os.str());
        }
        if (e.j < 0 || e.j >= q_.dim()) {
            std::ostringstream os;
            os << "coupling: entry index j = " << e.j << " out of range";
            throw ValidationError(os.str());
        }
        if (q_[e.j] <= kSupportTol) {
            std::ostringstream os;
            os << "coupling: entry for j = " << e.j
               << " outside the support of q (conditional undefined there)";
            throw ValidationError(os.str());
        }
        if (!(e.value >= 0.0)) {
            std::ostringstream os;
            os << "coupling: entry (" << e.i << "," << e.j << "," << e.f << ") = " << e.value
               << " is negative";
            throw ValidationError(os.str());
        }
    }

    // Residuals of Conditions 1-3.
    std::vector<double> c1(static_cast<size_t>(q_.dim()), 0.0);
    std::vector<double> c2(static_cast<size_t>(p_.dim()), 0.0);
    std::vector<double> c3(static_cast<size_t>(p_.dim()), 0.0);
    for (const auto& e : entries_) {
        c1[static_cast<size_t>(e.j)] += e.value;
        c2[static_cast<size_t>(e.i)] += e.value * std::exp(e.f * delta_w_);
        c3[static_cast<size_t>(e.i)] += e.value * q_[e.j];
    }
    for (int j = 0; j < q_.dim(); ++j) {
        if (q_[j] > kSupportTol) {
            residuals_.r1 = std::max(residuals_.r1, std::abs(c1[static_cast<size_t>(j)] - 1.0));
        }
    }
    residuals_.c2_one_sided = (mode_ == GridMode::floor_discretised);
    double floor_lower = std::exp(-delta_w_);
    for (int i = 0; i < p_.dim(); ++i) {
        if (p_[i] > kSupportTol) {
            double s = c2[static_cast<size_t>(i)];
            residuals_.c2_excess = std::max(residuals_.c2_excess, s - 1.0);
            residuals_.c2_deficit = std::max(
                residuals_.c2_deficit,
                (residuals_.c2_one_sided ? floor_lower : 1.0) - s);
            residuals_.r2 = std::max(residuals_.r2, std::abs(s - 1.0));
        }
        residuals_.r3 = std::max(residuals_.r3, std::abs(c3[static_cast<size_t>(i)] - p_[i]));
    }
    residuals_.c2_excess = std::max(residuals_.c2_excess, 0.0);
    residuals_.c2_deficit = std::max(residuals_.c2_deficit, 0.0);
    if (residuals_.c2_one_sided) {
        residuals_.r2 = std::max(residuals_.c2_excess, residuals_.c2_deficit);
    }
}

double Coupling::value(int i, int j, int f) const {
    CouplingEntry key{i, j, f, 0.0};
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const CouplingEntry& a, const CouplingEntry& b) {
                                   if (a.i != b.i) return a.i < b.i;
                                   if (a.j != b.j) return a.j < b.j;
                                   return a.f < b.f;
                               });
    if (it != entries_.end() && it->i == i && it->j == j && it->f == f) return it->value;
    return 0.0;
}

int Coupling::f_max() const {
    int m = 0;
    for (const auto& e : entries_) {
        if (e.value > 0.0) m = std::max(m, std::abs(e.f));
    }
    return m;
}

int Coupling::f_lo() const {
    int lo = 0;
    for (const auto& e : entries_) {
        if (e.value > 0.0) lo = std::min(lo, e.f);
    }
    return lo;
}

int Coupling::f_hi() const {
    int hi = 0;
    for (const auto& e : entries_) {
        if (e.value > 0.0) hi = std::max(hi, e.f);
    }
    return hi;
}

Coupling canonical_coupling(const DiagonalState& p, const DiagonalState& q, int u,
                            GridMode mode) {
    if (u < 2) throw ValidationError("canonical_coupling: u must be >= 2");
    double dw = std::log(static_cast<double>(u)) - std::log(static_cast<double>(u - 1));
    std::vector<CouplingEntry> entries;
    std::vector<std::pair<int, int>> offenders;
    for (int i = 0; i < p.dim(); ++i) {
        if (p[i] <= kSupportTol) continue;
        for (int j = 0; j < q.dim(); ++j) {
            if (q[j] <= kSupportTol) continue;
            double f_real = (std::log(q[j]) - std::log(p[i])) / dw;
            int f;
            if (mode == GridMode::exact_grid) {
                f = static_cast<int>(std::llround(f_real));
                if (std::abs(f_real - f) > 1e-9) {
                    offenders.emplace_back(i, j);
                    continue;
                }
            } else {
                // floor with a snap so ratios that are exactly on the grid do
                // not fall one step down from rounding noise
                f = static_cast<int>(std::floor(f_real + 1e-9));
            }
            entries.push_back(CouplingEntry{i, j, f, p[i]});
        }
    }
    if (!offenders.empty()) {
        std::ostringstream os;
        os << "canonical_coupling: exact grid requested but ln(q_j/p_i) is off-grid for (i,j):";
        for (auto& [i, j] : offenders) os << " (" << i << "," << j << ")";
        throw GridError(os.str(), std::move(offenders));
    }
    return Coupling(p, q, u, mode, std::move(entries));
}

Coupling explicit_coupling(const DiagonalState& p, const DiagonalState& q,
                           std::vector<CouplingEntry> entries, int u, GridMode mode) {
    return Coupling(p, q, u, mode, std::move(entries));
}

ConditionResiduals condition_residuals(const Coupling& c) { return c.residuals(); }

std::vector<std::pair<int, double>> marginal_w(const Coupling& c) {
    std::map<int, double> acc;
    for (const auto& e : c.entries()) {
        acc[e.f] += e.value * c.q()[e.j];
    }
    return {acc.begin(), acc.end()};
}

Coupling mix(const std::vector<Coupling>& couplings, const std::vector<double>& weights) {
    if (couplings.empty() || couplings.size() != weights.size()) {
        throw ValidationError("mix: need one weight per coupling");
    }
    double wsum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw ValidationError("mix: weights must be >= 0");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-12) throw ValidationError("mix: weights must sum to 1");
    const Coupling& first = couplings.front();
    for (const auto& c : couplings) {
        if (c.p().dim() != first.p().dim() || c.q().dim() != first.q().dim() ||
            c.u() != first.u() || c.mode() != first.mode()) {
            throw ValidationError("mix: mismatched marginals or grid");
        }
        for (int i = 0; i < first.p().dim(); ++i) {
            if (std::abs(c.p()[i] - first.p()[i]) > 1e-12) {
                throw ValidationError("mix: mismatched p marginal");
            }
        }
        for (int j = 0; j < first.q().dim(); ++j) {
            if (std::abs(c.q()[j] - first.q()[j]) > 1e-12) {
                throw ValidationError("mix: mismatched q marginal");
            }
        }
    }
    std::vector<CouplingEntry> merged;
    for (size_t m = 0; m < couplings.size(); ++m) {
        for (const auto& e : couplings[m].entries()) {
            merged.push_back(CouplingEntry{e.i, e.j, e.f, weights[m] * e.value});
        }
    }
    return Coupling(first.p(), first.q(), first.u(), first.mode(), std::move(merged));
}

Feasibility feasibility_lp_over(const DiagonalState& p, const DiagonalState& q,
                                const std::vector<int>& f_values, int u) {
    if (p.dim() > 16 || q.dim() > 16) {
        throw ValidationError("feasibility_lp: dimensions above 16 not supported");
    }
    for (int f : f_values) {
        if (std::abs(f) > 16) throw ValidationError("feasibility_lp: |f| above 16 not supported");
    }
    if (f_values.empty()) throw ValidationError("feasibility_lp: empty f set");
    double dw = std::log(static_cast<double>(u)) - std::log(static_cast<double>(u - 1));

    std::vector<int> sup_p, sup_q;
    for (int i = 0; i < p.dim(); ++i) {
        if (p[i] > kSupportTol) sup_p.push_back(i);
    }
    for (int j = 0; j < q.dim(); ++j) {
        if (q[j] > kSupportTol) sup_q.push_back(j);
    }
    const int nf = static_cast<int>(f_values.size());
    const int ni = static_cast<int>(sup_p.size());
    const int nj = static_cast<int>(sup_q.size());
    const int n_vars = ni * nj * nf;
    auto var = [&](int ii, int jj, int ff) { return (ii * nj + jj) * nf + ff; };

    const int m = nj + 2 * ni;
    std::vector<std::vector<double>> A(static_cast<size_t>(m),
                                       std::vector<double>(static_cast<size_t>(n_vars), 0.0));
    std::vector<double> b(static_cast<size_t>(m), 0.0);
    for (int jj = 0; jj < nj; ++jj) {
        for (int ii = 0; ii < ni; ++ii) {
            for (int ff = 0; ff < nf; ++ff) A[static_cast<size_t>(jj)][static_cast<size_t>(var(ii, jj, ff))] = 1.0;
        }
        b[static_cast<size_t>(jj)] = 1.0;
    }
    for (int ii = 0; ii < ni; ++ii) {
        int row2 = nj + ii;
        int row3 = nj + ni + ii;
        for (int jj = 0; jj < nj; ++jj) {
            for (int ff = 0; ff < nf; ++ff) {
                A[static_cast<size_t>(row2)][static_cast<size_t>(var(ii, jj, ff))] =
                    std::exp(f_values[static_cast<size_t>(ff)] * dw);
                A[static_cast<size_t>(row3)][static_cast<size_t>(var(ii, jj, ff))] =
                    q[sup_q[static_cast<size_t>(jj)]];
            }
        }
        b[static_cast<size_t>(row2)] = 1.0;
        b[static_cast<size_t>(row3)] = p[sup_p[static_cast<size_t>(ii)]];
    }

    auto x = phase_one_feasible(A, b);
    if (!x) return Feasibility{false, std::nullopt};

    std::vector<CouplingEntry> entries;
    for (int ii = 0; ii < ni; ++ii) {
        for (int jj = 0; jj < nj; ++jj) {
            for (int ff = 0; ff < nf; ++ff) {
                double v = (*x)[static_cast<size_t>(var(ii, jj, ff))];
                if (v > 1e-12) {
                    entries.push_back(CouplingEntry{sup_p[static_cast<size_t>(ii)],
                                                    sup_q[static_cast<size_t>(jj)],
                                                    f_values[static_cast<size_t>(ff)], v});
                }
            }
        }
    }
    return Feasibility{true, explicit_coupling(p, q, std::move(entries), u)};
}

Feasibility feasibility_lp(const DiagonalState& p, const DiagonalState& q, int F, int u) {
    if (F < 0) throw ValidationError("feasibility_lp: F must be >= 0");
    std::vector<int> fs;
    for (int f = -F; f <= F; ++f) fs.push_back(f);
    return feasibility_lp_over(p, q, fs, u);
}

}  // namespace cohfluct
