#pragma once

#include <stdexcept>
#include <string>

namespace volrat {

// Argument outside the mathematical domain of an operation
// (negative gamma argument, delta outside [0,1), ...).
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Structurally invalid call: wrong parity, m >= n, unsorted grid, ...
class usage_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Filesystem failure while emitting or reading artifacts.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative scheme exhausted its budget. Carries the best estimate
// reached and a bound on its error so callers can still report something.
class numerical_error : public std::runtime_error {
public:
    numerical_error(const std::string& what, double best_estimate, double error_bound)
        : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

} // namespace volrat
