#include "diagonal_state.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace cohfluct {

DiagonalState::DiagonalState(std::vector<double> probs, std::string label, double tol)
    : probs_(std::move(probs)), label_(std::move(label)) {
    if (probs_.empty()) {
        throw ValidationError("probability vector must be nonempty");
    }
    double sum = 0.0;
    for (size_t i = 0; i < probs_.size(); ++i) {
        double v = probs_[i];
        if (!(v >= 0.0)) {  // also catches NaN
            std::ostringstream os;
            os << "probability vector: entry " << i << " = " << v << " is negative";
            throw ValidationError(os.str());
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > tol) {
        std::ostringstream os;
        os.precision(17);
        os << "probability vector: sum=" << sum << " (must be 1 within " << tol << ")";
        throw ValidationError(os.str());
    }
}

double DiagonalState::min_positive(double tol) const {
    double m = std::numeric_limits<double>::infinity();
    for (double v : probs_) {
        if (v > tol && v < m) m = v;
    }
    if (!std::isfinite(m)) {
        throw ValidationError("probability vector has no entry above tolerance");
    }
    return m;
}

bool DiagonalState::uniform_on_support(double tol) const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double v : probs_) {
        if (v > tol) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return hi > 0.0 && (hi - lo) <= tol;
}

DiagonalState max_coherent(int d) {
    if (d < 1) throw ValidationError("max_coherent: dimension must be >= 1");
    return DiagonalState(std::vector<double>(static_cast<size_t>(d), 1.0 / d));
}

double shannon_entropy(const DiagonalState& p) {
    double s = 0.0;
    for (double v : p.probs()) {
        if (v > 0.0) s -= v * std::log(v);
    }
    return s < 0.0 ? 0.0 : s;  // clip -0.0 noise
}

double c_rel_pure(const DiagonalState& p) { return shannon_entropy(p); }

int diagonal_rank(const DiagonalState& p, double tol) {
    if (tol < 0.0) throw ValidationError("diagonal_rank: tol must be >= 0");
    int r = 0;
    for (double v : p.probs()) {
        if (v > tol) ++r;
    }
    return r;
}

double renyi_entropy(const DiagonalState& p, double alpha) {
    if (alpha == 1.0) return shannon_entropy(p);
    double acc = 0.0;
    for (double v : p.probs()) {
        if (v > 0.0) {
            acc += std::pow(v, alpha);
        } else if (alpha > 0.0) {
            // 0^alpha = 0 contributes nothing.
        }
        // alpha <= 0: zero entries excluded by the support convention.
    }
    double sgn = alpha >= 0.0 ? 1.0 : -1.0;
    return sgn * std::log(acc) / (1.0 - alpha);
}

}  // namespace cohfluct
