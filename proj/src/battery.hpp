#pragma once

#include <vector>

#include "errors.hpp"

namespace cohfluct {

// Level-occupation profile for a battery. A truncated Gaussian is clipped to
// [lo, hi] (the protocol layer passes its admissible window); a negative
// lo/hi pair means "the whole level range".
struct AlphaProfile {
    enum class Kind { uniform_window, truncated_gaussian };
    Kind kind = Kind::uniform_window;
    int lo = -1;
    int hi = -1;
    double center = 0.0;
    double sigma = 1.0;

    static AlphaProfile uniform_window(int lo, int hi) {
        AlphaProfile a;
        a.kind = Kind::uniform_window;
        a.lo = lo;
        a.hi = hi;
        return a;
    }
    static AlphaProfile truncated_gaussian(double center, double sigma, int lo = -1, int hi = -1) {
        AlphaProfile a;
        a.kind = Kind::truncated_gaussian;
        a.center = center;
        a.sigma = sigma;
        a.lo = lo;
        a.hi = hi;
        return a;
    }
};

// Coherence battery in the collapsed level representation: u, n, the profile
// alpha over levels x in [0, n], and the coherence quantum
// delta_w = ln(u) - ln(u-1). The exponentially large Hilbert space behind
// each level is carried only through log-multiplicities.
class Battery {
public:
    Battery(int u, int n, std::vector<double> alpha);

    int u() const { return u_; }
    int n() const { return n_; }
    double delta_w() const { return delta_w_; }
    const std::vector<double>& alpha() const { return alpha_; }
    double alpha_at(int x) const {
        return (x < 0 || x > n_) ? 0.0 : alpha_[static_cast<size_t>(x)];
    }
    // Lowest/highest level with alpha_x > 0.
    int support_lo() const;
    int support_hi() const;

private:
    int u_;
    int n_;
    std::vector<double> alpha_;
    double delta_w_;
};

Battery new_battery(int u, int n, const AlphaProfile& profile);

// Coherence of the level-x eigenstate: x ln u + (n-x) ln(u-1), nats.
double level_coherence(int u, int n, int x);

// ln of the level multiplicity m_x = u^x (u-1)^(n-x). Same value as
// level_coherence; kept separate because it is used as a combinatorial
// weight, never as a coherence. m_x itself is never materialised.
double log_multiplicity(int u, int n, int x);

// Smallest epsilon consistent with the uniformity constraint
// sum_x |alpha_x - alpha_(x+y)| <= |y| sqrt(8 eps) for all |y| <= f_max.
// Out-of-range indices read as 0; a finite window always gives eps > 0.
double uniformity_epsilon(const Battery& b, int f_max);

// Profile shifted by f levels (the raising operator acting on the collapsed
// profile). Wraparound is deliberately not implemented: if the support would
// leave [0, n] this throws WraparoundError.
Battery shift_alpha(const Battery& b, int f);

}  // namespace cohfluct
