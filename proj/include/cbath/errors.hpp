// errors.hpp — error types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace cbath {

// Bad scenario / configuration input. Message names the offending field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation produced an unusable result (non-finite value, residual
// imaginary part beyond tolerance, ...). Message carries diagnostics.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Propagation requested below the smallest supported time: the quadratic-form
// denominators degenerate as t -> 0 and the propagator becomes a delta sequence.
class DegenerateTimeError : public NumericalError {
public:
    DegenerateTimeError(double t, double t_min)
        : NumericalError("degenerate propagation time t=" + std::to_string(t) +
                         " below t_min=" + std::to_string(t_min)) {}
};

// The Gaussian integral over the initial variables lost convergence: the real
// part of the combined quadratic form is no longer positive definite.
class PropagationError : public NumericalError {
public:
    PropagationError(const std::string& where, double offending_eigenvalue)
        : NumericalError("invalid propagation in " + where +
                         ": primed-block real part not positive definite "
                         "(min eigenvalue " + std::to_string(offending_eigenvalue) + ")"),
          min_eigenvalue(offending_eigenvalue) {}

    double min_eigenvalue;
};

} // namespace cbath
