#include "theorems.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "majorisation.hpp"

namespace cohfluct {

namespace {

constexpr double kSupportTol = 1e-12;

void require_uniform_final(const Coupling& c, const char* who) {
    if (!c.q().uniform_on_support()) {
        std::ostringstream os;
        os << who << ": final state is not uniform on its support";
        throw PreconditionError(os.str());
    }
}

}  // namespace

TheoremReport integral_ft(const Coupling& c, double tol) {
    if (c.mode() != GridMode::exact_grid) {
        throw PreconditionError("integral_ft: exact-grid coupling required");
    }
    double lhs = 0.0;
    for (const auto& e : c.entries()) {
        // P(i,j,w) e^{w - ln q_j + ln p_i} = P(i,w|j) p_i e^w; q_j cancels.
        lhs += e.value * c.p()[e.i] * std::exp(e.f * c.delta_w());
    }
    TheoremReport r;
    r.name = "integral_ft";
    r.lhs = lhs;
    r.rhs = 1.0;
    r.relation = Relation::equals;
    r.residual = std::abs(lhs - 1.0);
    r.tolerance = tol;
    r.holds = r.residual <= tol;
    return r;
}

TheoremReport second_law(const Coupling& c, double tol) {
    double mean_w = 0.0;
    for (const auto& e : c.entries()) {
        mean_w += e.value * c.q()[e.j] * e.f * c.delta_w();
    }
    TheoremReport r;
    r.name = "second_law";
    r.lhs = mean_w;
    r.rhs = c_rel_pure(c.p()) - c_rel_pure(c.q());
    r.relation = Relation::leq;
    r.residual = std::max(0.0, r.lhs - r.rhs);
    r.tolerance = tol;
    r.holds = r.lhs <= r.rhs + tol;
    return r;
}

TheoremReport third_law(const Coupling& c, double tol) {
    auto pw = marginal_w(c);
    double lhs = 0.0;
    bool any = false;
    for (const auto& [f, prob] : pw) {
        if (prob > kSupportTol) {
            lhs += std::exp(f * c.delta_w());
            any = true;
        }
    }
    if (!any) throw PreconditionError("third_law: P(w) has empty support");
    int dprime = diagonal_rank(c.q());
    double rhs = c.q().min_positive() / (dprime * c.p().min_positive());
    TheoremReport r;
    r.name = "third_law";
    r.lhs = lhs;
    r.rhs = rhs;
    r.relation = Relation::geq;
    r.residual = std::max(0.0, rhs - lhs);
    r.tolerance = tol;
    r.holds = lhs >= rhs - tol;
    return r;
}

TheoremReport jarzynski(const Coupling& c, double tol) {
    require_uniform_final(c, "jarzynski");
    double lhs = 0.0;
    for (const auto& e : c.entries()) {
        lhs += e.value * c.q()[e.j] * std::exp(e.f * c.delta_w());
    }
    TheoremReport r;
    r.name = "jarzynski";
    r.lhs = lhs;
    r.rhs = static_cast<double>(diagonal_rank(c.p())) / diagonal_rank(c.q());
    r.relation = Relation::equals;
    r.residual = std::abs(r.lhs - r.rhs);
    r.tolerance = tol;
    r.holds = r.residual <= tol;
    return r;
}

TheoremReport tail_bound(const Coupling& c, double rr, double tol) {
    require_uniform_final(c, "tail_bound");
    if (!(rr > 0.0)) throw PreconditionError("tail_bound: r must be > 0");
    double threshold =
        std::log(static_cast<double>(diagonal_rank(c.p())) / diagonal_rank(c.q())) + rr;
    double lhs = 0.0;
    for (const auto& [f, prob] : marginal_w(c)) {
        if (f * c.delta_w() >= threshold - 1e-12) lhs += prob;
    }
    TheoremReport r;
    std::ostringstream name;
    name << "tail_bound(r=" << rr << ")";
    r.name = name.str();
    r.lhs = lhs;
    r.rhs = std::exp(-rr);
    r.relation = Relation::leq;
    r.residual = std::max(0.0, r.lhs - r.rhs);
    r.tolerance = tol;
    r.holds = r.lhs <= r.rhs + tol;
    return r;
}

TheoremReport crooks(const Coupling& forward, const ReverseCoupling& reverse, double tol) {
    require_uniform_final(forward, "crooks");
    if (!reverse.q_prime().uniform_on_support()) {
        throw PreconditionError("crooks: reverse final state is not uniform on its support");
    }
    int d = diagonal_rank(forward.p());
    int dprime = diagonal_rank(forward.q());
    std::map<int, double> pw;
    for (const auto& [f, prob] : marginal_w(forward)) {
        if (prob > kSupportTol) pw[f] = prob;
    }
    std::map<int, double> prev;
    for (const auto& [g, prob] : reverse.distribution()) {
        if (prob > kSupportTol) prev[g] = prob;
    }
    auto get = [](const std::map<int, double>& m, int k) {
        auto it = m.find(k);
        return it == m.end() ? 0.0 : it->second;
    };
    double residual = 0.0;
    auto probe = [&](int f) {
        double lhs = get(pw, f) * std::exp(f * forward.delta_w()) * dprime / d;
        residual = std::max(residual, std::abs(lhs - get(prev, -f)));
    };
    for (const auto& [f, prob] : pw) probe(f);
    for (const auto& [g, prob] : prev) probe(-g);
    TheoremReport r;
    r.name = "crooks";
    r.lhs = residual;
    r.rhs = 0.0;
    r.relation = Relation::equals;
    r.residual = residual;
    r.tolerance = tol;
    r.holds = residual <= tol;
    return r;
}

bool renyi_catalytic(const DiagonalState& p, const DiagonalState& q, int d,
                     const std::vector<double>& alpha_grid) {
    double ln_d = std::log(static_cast<double>(d));
    for (double alpha : alpha_grid) {
        if (alpha == 0.0 || alpha == 1.0) continue;
        double lhs = (renyi_entropy(p, alpha) - ln_d) / std::abs(alpha);
        double rhs = (renyi_entropy(q, alpha) - ln_d) / std::abs(alpha);
        if (!(lhs > rhs)) return false;
    }
    return true;
}

std::vector<double> default_alpha_grid() {
    std::vector<double> grid;
    const int half = 20;
    double lo = std::log(1e-2), hi = std::log(50.0);
    for (int k = 0; k < half; ++k) {
        double a = std::exp(lo + (hi - lo) * k / (half - 1));
        grid.push_back(a);
        grid.push_back(-a);
    }
    return grid;
}

EntropyMajorisationDiagnostic entropy_vs_majorisation(const DiagonalState& p,
                                                      const DiagonalState& q) {
    EntropyMajorisationDiagnostic d;
    d.majorised = is_majorised(p, q);
    d.entropy_ok = c_rel_pure(p) >= c_rel_pure(q) - 1e-12;
    d.agree = (d.majorised == d.entropy_ok);
    return d;
}

}  // namespace cohfluct
