#include "battery.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cohfluct {

Battery::Battery(int u, int n, std::vector<double> alpha)
    : u_(u), n_(n), alpha_(std::move(alpha)) {
    if (u_ < 2) throw ValidationError("battery: u must be >= 2");
    if (n_ < 0) throw ValidationError("battery: n must be >= 0");
    if (static_cast<int>(alpha_.size()) != n_ + 1) {
        throw ValidationError("battery: alpha must have n+1 entries");
    }
    double sum = 0.0;
    for (double a : alpha_) {
        if (!(a >= 0.0)) throw ValidationError("battery: alpha entries must be >= 0");
        sum += a;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "battery: alpha sums to " << sum;
        throw ValidationError(os.str());
    }
    delta_w_ = std::log(static_cast<double>(u_)) - std::log(static_cast<double>(u_ - 1));
}

int Battery::support_lo() const {
    for (int x = 0; x <= n_; ++x) {
        if (alpha_[static_cast<size_t>(x)] > 0.0) return x;
    }
    return -1;
}

int Battery::support_hi() const {
    for (int x = n_; x >= 0; --x) {
        if (alpha_[static_cast<size_t>(x)] > 0.0) return x;
    }
    return -1;
}

Battery new_battery(int u, int n, const AlphaProfile& profile) {
    if (n < 0) throw ValidationError("new_battery: n must be >= 0");
    int lo = profile.lo < 0 ? 0 : profile.lo;
    int hi = profile.hi < 0 ? n : profile.hi;
    if (lo < 0 || hi > n || lo > hi) {
        std::ostringstream os;
        os << "new_battery: window [" << lo << "," << hi << "] outside [0," << n << "]";
        throw ValidationError(os.str());
    }
    std::vector<double> alpha(static_cast<size_t>(n) + 1, 0.0);
    switch (profile.kind) {
        case AlphaProfile::Kind::uniform_window: {
            double v = 1.0 / (hi - lo + 1);
            for (int x = lo; x <= hi; ++x) alpha[static_cast<size_t>(x)] = v;
            break;
        }
        case AlphaProfile::Kind::truncated_gaussian: {
            if (!(profile.sigma > 0.0)) {
                throw ValidationError("new_battery: gaussian sigma must be > 0");
            }
            double sum = 0.0;
            for (int x = lo; x <= hi; ++x) {
                double t = (x - profile.center) / profile.sigma;
                alpha[static_cast<size_t>(x)] = std::exp(-0.5 * t * t);
                sum += alpha[static_cast<size_t>(x)];
            }
            for (int x = lo; x <= hi; ++x) alpha[static_cast<size_t>(x)] /= sum;
            break;
        }
    }
    return Battery(u, n, std::move(alpha));
}

double level_coherence(int u, int n, int x) {
    if (u < 2) throw ValidationError("level_coherence: u must be >= 2");
    if (x < 0 || x > n) {
        std::ostringstream os;
        os << "level_coherence: x = " << x << " outside [0," << n << "]";
        throw ValidationError(os.str());
    }
    return x * std::log(static_cast<double>(u)) + (n - x) * std::log(static_cast<double>(u - 1));
}

double log_multiplicity(int u, int n, int x) { return level_coherence(u, n, x); }

double uniformity_epsilon(const Battery& b, int f_max) {
    if (f_max < 1) throw ValidationError("uniformity_epsilon: f_max must be >= 1");
    double eps = 0.0;
    for (int y = 1; y <= f_max; ++y) {
        double total = 0.0;
        for (int x = -y; x <= b.n(); ++x) {
            total += std::abs(b.alpha_at(x) - b.alpha_at(x + y));
        }
        double per_step = total / y;
        eps = std::max(eps, per_step * per_step / 8.0);
    }
    return eps;
}

Battery shift_alpha(const Battery& b, int f) {
    int lo = b.support_lo(), hi = b.support_hi();
    if (lo < 0) throw ValidationError("shift_alpha: empty profile");
    if (lo + f < 0 || hi + f > b.n()) {
        std::ostringstream os;
        os << "shift_alpha: shift " << f << " moves support [" << lo << "," << hi
           << "] outside [0," << b.n() << "]";
        throw WraparoundError(os.str());
    }
    std::vector<double> alpha(static_cast<size_t>(b.n()) + 1, 0.0);
    for (int x = 0; x <= b.n(); ++x) {
        alpha[static_cast<size_t>(x)] = b.alpha_at(x - f);
    }
    return Battery(b.u(), b.n(), std::move(alpha));
}

}  // namespace cohfluct
