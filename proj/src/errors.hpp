#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cohfluct {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid numeric input: bad probability vector, shape mismatch, bad range.
class ValidationError : public Error {
public:
    using Error::Error;
};

// p is not majorised by q; carries the first violated prefix index (0-based,
// over the descending-sorted vectors).
class MajorisationError : public Error {
public:
    MajorisationError(const std::string& what, int prefix_index)
        : Error(what), prefix_index_(prefix_index) {}
    int prefix_index() const { return prefix_index_; }

private:
    int prefix_index_;
};

// exact_grid coupling requested but some ln(q_j/p_i) is off-grid; carries the
// offending (i, j) pairs.
class GridError : public Error {
public:
    GridError(const std::string& what, std::vector<std::pair<int, int>> offenders)
        : Error(what), offenders_(std::move(offenders)) {}
    const std::vector<std::pair<int, int>>& offenders() const { return offenders_; }

private:
    std::vector<std::pair<int, int>> offenders_;
};

// A battery level shift (or profile support) would leave the admissible range.
class WraparoundError : public Error {
public:
    using Error::Error;
};

// Window construction impossible (N or N' below 1, support mismatch).
class WindowError : public Error {
public:
    using Error::Error;
};

// A theorem was evaluated outside its stated hypotheses.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Dense oracle instance exceeds the supported size caps.
class SizeCapError : public Error {
public:
    using Error::Error;
};

// Numerical degeneracy (e.g. Birkhoff matching failed before the residual
// dropped below tolerance).
class NumericError : public Error {
public:
    using Error::Error;
};

// LP iteration cap exceeded: neither feasible nor infeasible was established.
class InconclusiveError : public Error {
public:
    using Error::Error;
};

// Experiment configuration rejected (schema violation); message names the
// field and the constraint.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace cohfluct
