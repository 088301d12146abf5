// Acceptance suite: every criterion is evaluated at its stated tolerance and
// reported as a single pass/fail line. Exit code is the number of failures.

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "theorems.hpp"

using namespace cohfluct;

namespace {

const double kLn2 = std::log(2.0);
int failures = 0;

void criterion(int num, const std::string& desc, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", num, desc.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

Battery uniform_on_window(const Coupling& c, const WindowSpec& w) {
    return new_battery(c.u(), w.n, AlphaProfile::uniform_window(w.s_lo, w.s_hi));
}

Battery uniform_on_inner(const Coupling& c, const WindowSpec& w) {
    return new_battery(c.u(), w.n,
                       AlphaProfile::uniform_window(w.s_lo + w.f_max, w.s_hi - w.f_max));
}

double round_trip_error(const Coupling& c, const Coupling& out) {
    double err = 0.0;
    for (const auto& e : c.entries()) err = std::max(err, std::abs(out.value(e.i, e.j, e.f) - e.value));
    for (const auto& e : out.entries()) err = std::max(err, std::abs(c.value(e.i, e.j, e.f) - e.value));
    return err;
}

std::vector<Coupling> hundred_random_mixtures() {
    std::mt19937_64 rng(20240607);
    std::vector<Coupling> out;
    auto base = fixtures::canonical_d4();
    for (int k = 0; k < 100; ++k) out.push_back(fixtures::random_valid_coupling(base, rng));
    return out;
}

// 1. Conditions 1-3 on canonical dyadic fixtures: residuals below 1e-12.
void criterion_1() {
    double worst = 0.0;
    for (const Coupling& c :
         {fixtures::canonical_2to1(), fixtures::canonical_d4(), fixtures::canonical_d3(),
          fixtures::crooks_coupling(), fixtures::identity_coupling(fixtures::dyadic_p4())}) {
        auto r = condition_residuals(c);
        worst = std::max({worst, r.r1, r.r2, r.r3});
    }
    criterion(1, "Conditions 1-3 residuals < 1e-12 on canonical dyadic fixtures", worst < 1e-12,
              "max residual " + fmt(worst));
}

// 2. Round-trip exactness at n in {7, 11, 31}.
void criterion_2() {
    double worst = 0.0;
    for (int n : {7, 11, 31}) {
        for (const Coupling& c : {fixtures::identity_coupling(DiagonalState({0.5, 0.25, 0.25})),
                                  fixtures::canonical_d4(), fixtures::breathing()}) {
            auto w = make_window(n, c);
            auto out = forward_protocol(build_transition(c, w), uniform_on_window(c, w));
            worst = std::max(worst, round_trip_error(c, out));
        }
    }
    criterion(2, "round trip reproduces the coupling within 1e-12 at n in {7,11,31}",
              worst < 1e-12, "max entry error " + fmt(worst));
}

// 3. Second law: saturation on the canonical d4 fixture, strict gap for the
// breathing coupling.
void criterion_3() {
    auto sat = second_law(fixtures::canonical_d4());
    bool ok1 = std::abs(sat.lhs - (-kLn2 / 4)) < 1e-12 && std::abs(sat.lhs - sat.rhs) < 1e-12;
    auto strict = second_law(fixtures::breathing());
    double gap = strict.rhs - strict.lhs;
    bool ok2 = std::abs(gap - kLn2 / 3) < 1e-12 && strict.holds;
    criterion(3, "second law: exact saturation (d4) and (1/3)ln2 gap (breathing)", ok1 && ok2,
              "<w> = " + fmt(sat.lhs) + ", gap = " + fmt(gap));
}

// 4. Jarzynski values on the three fixtures plus tail bounds on fixtures and
// 100 random mixtures.
void criterion_4() {
    bool ok = true;
    std::string detail;
    auto j1 = jarzynski(fixtures::canonical_d4());
    auto j2 = jarzynski(fixtures::canonical_2to1());
    auto j3 = jarzynski(fixtures::crooks_coupling());
    ok = ok && std::abs(j1.lhs - 1.0) < 1e-12;
    ok = ok && std::abs(j2.lhs - 2.0) < 1e-12;
    ok = ok && std::abs(j3.lhs - 0.75) < 1e-12;
    detail = "<e^w> = " + fmt(j1.lhs) + ", " + fmt(j2.lhs) + ", " + fmt(j3.lhs);

    std::vector<Coupling> population = {fixtures::canonical_d4(), fixtures::canonical_2to1(),
                                        fixtures::crooks_coupling(), fixtures::breathing()};
    for (auto& c : hundred_random_mixtures()) population.push_back(std::move(c));
    for (const auto& c : population) {
        for (double r : {0.1, 0.5, 1.0, 2.0}) ok = ok && tail_bound(c, r).holds;
    }
    criterion(4, "Jarzynski analogue values and tail bounds (fixtures + 100 mixtures)", ok,
              detail);
}

// 5. Crooks analogue through protocol round trips with uniform windows.
void criterion_5() {
    auto c = fixtures::crooks_coupling();
    auto w = make_window(11, c);
    auto g = build_transition(c, w);
    Coupling fwd = forward_protocol(g, uniform_on_window(c, w));
    ReverseCoupling rev = reverse_protocol(g, uniform_on_inner(c, w));
    auto rep = crooks(fwd, rev);

    double pw_minus = 0.0, prev_plus = 0.0;
    for (const auto& [f, prob] : marginal_w(fwd)) {
        if (f == -1) pw_minus = prob;
    }
    for (const auto& [gidx, prob] : rev.distribution()) {
        if (gidx == 1) prev_plus = prob;
    }
    double spot = pw_minus / prev_plus;
    bool ok = rep.residual < 1e-10 && std::abs(spot - 1.5) < 1e-10;
    criterion(5, "Crooks analogue: residual < 1e-10 and P(-ln2)/P_rev(ln2) = 1.5", ok,
              "residual " + fmt(rep.residual) + ", spot ratio " + fmt(spot));
}

// 6. Third law on every fixture and 100 mixtures, plus the divergence trend:
// halving p_min raises the required max|f| by exactly 1 (u = 2).
void criterion_6() {
    bool ok = true;
    std::vector<Coupling> population = {fixtures::canonical_d4(), fixtures::canonical_2to1(),
                                        fixtures::crooks_coupling(), fixtures::breathing(),
                                        fixtures::canonical_d3()};
    for (auto& c : hundred_random_mixtures()) population.push_back(std::move(c));
    for (const auto& c : population) ok = ok && third_law(c).holds;

    int prev_fmax = -1;
    bool trend = true;
    for (int k = 4; k <= 12; ++k) {
        double pmin = std::ldexp(1.0, -k);  // 2^-k
        DiagonalState p({1.0 - 3 * pmin, pmin, pmin, pmin});
        auto c = canonical_coupling(p, fixtures::uniform4(), 2, GridMode::floor_discretised);
        ok = ok && third_law(c).holds;
        int fmax = c.f_max();
        if (prev_fmax >= 0) trend = trend && (fmax == prev_fmax + 1);
        prev_fmax = fmax;
    }
    criterion(6, "third law holds everywhere; max|f| grows by 1 per p_min halving", ok && trend,
              std::string("trend ") + (trend ? "exact" : "broken"));
}

// 7. Overlap bound along the n sweep.
void criterion_7() {
    auto c = fixtures::canonical_d4();
    bool ok = true;
    double prev_gap = 2.0;
    double bound_at_11 = 0.0;
    std::string gaps;
    for (int n : {7, 11, 19, 31}) {
        auto w = make_window(n, c);
        auto [psi, phi] = build_joint_states(c, w);
        auto ov = overlap_to_ideal(psi, c.p(), w);
        if (n == 11) bound_at_11 = ov.bound;
        ok = ok && (ov.overlap >= ov.bound - 1e-12);
        double gap = 1.0 - ov.overlap;
        ok = ok && (gap <= prev_gap);
        prev_gap = gap;
        gaps += (gaps.empty() ? "" : " > ") + fmt(gap);
    }
    ok = ok && std::abs(bound_at_11 - 0.833333) < 1e-6;
    criterion(7, "overlap >= 1/(1+2f_max/(N+1)) with 1-overlap decreasing in n", ok,
              "bound(n=11) = " + fmt(bound_at_11) + "; gaps " + gaps);
}

// 8. Non-ideal (truncated-Gaussian) battery residual bounds at every sweep
// point.
void criterion_8() {
    bool ok = true;
    double worst_margin = 1e300;
    for (const Coupling& c : {fixtures::canonical_d4(), fixtures::breathing()}) {
        for (int n = 7; n <= 31; n += 4) {
            auto w = make_window(n, c);
            auto g = build_transition(c, w);
            Battery b = new_battery(
                c.u(), n,
                AlphaProfile::truncated_gaussian((w.s_lo + w.s_hi) / 2.0, (w.N + 1) / 8.0,
                                                 w.s_lo, w.s_hi));
            double eps = uniformity_epsilon(b, w.f_max);
            auto out = forward_protocol(g, b);
            auto res = condition_residuals(out);
            double c2_bound = std::sqrt(8.0 * eps) * w.f_max * (w.f_max + 1);
            ok = ok && res.r2 <= c2_bound && res.r3 <= eps / 2.0;
            worst_margin = std::min(worst_margin, c2_bound - res.r2);
        }
    }
    criterion(8, "Gaussian-battery residuals within sqrt(8e)f(f+1) and e/2 bounds", ok,
              "smallest Condition-2 margin " + fmt(worst_margin));
}

// 9. Dense oracle equivalence on four fixtures.
void criterion_9() {
    struct Case {
        Coupling c;
        int n;
    };
    std::vector<Case> cases;
    cases.push_back({fixtures::identity_coupling(max_coherent(2)), 4});
    cases.push_back({fixtures::canonical_2to1(), 6});
    cases.push_back({fixtures::breathing(), 6});
    cases.push_back({fixtures::canonical_d3(), 8});
    double worst = 0.0;
    for (const auto& [c, n] : cases) {
        auto rep = full_label_oracle(c, 2, n);
        worst = std::max(worst, rep.max_err());
    }
    criterion(9, "dense full-label oracle matches the collapsed engine within 1e-12",
              worst < 1e-12, "max deviation " + fmt(worst) + " over 4 fixtures");
}

// 10. Majorisation kit: Birkhoff bound and reconstruction, transport
// equivalence, and the flagged entropy/majorisation counterexample.
void criterion_10() {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> dim_dist(2, 8);
    bool ok = true;
    double worst_reconstruction = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        int d = dim_dist(rng);
        auto B = fixtures::random_permutation_mixture(d, rng);
        auto mixd = birkhoff(B);
        ok = ok && static_cast<int>(mixd.terms().size()) <= (d - 1) * (d - 1) + 1;
        auto R = mixd.to_matrix();
        for (int r = 0; r < d; ++r) {
            for (int cidx = 0; cidx < d; ++cidx) {
                worst_reconstruction =
                    std::max(worst_reconstruction, std::abs(R.at(r, cidx) - B.at(r, cidx)));
            }
        }
    }
    ok = ok && worst_reconstruction < 1e-12;

    for (int trial = 0; trial < 200; ++trial) {
        int d = dim_dist(rng);
        DiagonalState q = fixtures::random_state(d, rng);
        DiagonalState p = (trial % 2 == 0)
                              ? apply_transport(fixtures::random_permutation_mixture(d, rng), q)
                              : fixtures::random_state(d, rng);
        bool maj = is_majorised(p, q);
        bool transported = false;
        try {
            auto B = hlp_transport(p, q);
            transported = true;
            double err = 0.0;
            for (int r = 0; r < d; ++r) {
                double acc = 0.0;
                for (int cidx = 0; cidx < d; ++cidx) acc += B.at(r, cidx) * q[cidx];
                err = std::max(err, std::abs(acc - p[r]));
            }
            ok = ok && err < 1e-12;
        } catch (const MajorisationError&) {
            transported = false;
        }
        ok = ok && (maj == transported);
    }

    auto diag = entropy_vs_majorisation(DiagonalState({0.5, 0.49, 0.01}),
                                        DiagonalState({0.8, 0.1, 0.1}));
    ok = ok && diag.entropy_ok && !diag.majorised && !diag.agree;
    criterion(10, "majorisation kit: Birkhoff bound, transport equivalence, counterexample",
              ok, "max reconstruction error " + fmt(worst_reconstruction));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures == 0) {
        std::printf("acceptance: all 10 criteria passed\n");
    } else {
        std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    }
    return failures;
}
