#ifndef SPDC_ERRORS_HPP
#define SPDC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spdc {

// Bad argument values (out-of-range indices, violated preconditions).
class argument_error : public std::invalid_argument {
public:
    explicit argument_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Operation requested on a dispersion model of the wrong matching type.
class mismatch_type_error : public std::logic_error {
public:
    explicit mismatch_type_error(const std::string& msg) : std::logic_error(msg) {}
};

// Inputs that are formally valid but degenerate (zero norms, empty support).
class degenerate_input_error : public std::runtime_error {
public:
    explicit degenerate_input_error(const std::string& msg) : std::runtime_error(msg) {}
};

class empty_support_error : public std::runtime_error {
public:
    explicit empty_support_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure; carries the best available estimate and its error bound.
class numeric_error : public std::runtime_error {
public:
    numeric_error(const std::string& msg, double estimate, double error_bound)
        : std::runtime_error(msg), estimate(estimate), error_bound(error_bound) {}
    double estimate;
    double error_bound;
};

// Config file problems: unknown keys, duplicate keys, invariant violations.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace spdc

#endif
