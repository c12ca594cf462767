#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qfringe {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad values fed to an operation: non-finite numbers, negative rates,
// matrices that are not physical states.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

// Structurally invalid run descriptions: a step above the stability
// ceiling, malformed grids, unwritable output paths.
class InvalidSpecError : public Error {
public:
    using Error::Error;
};

// A closed-form path was requested outside its domain of validity
// (the resonant formulas do not apply off resonance).
class UnsupportedRegimeError : public Error {
public:
    using Error::Error;
};

// Inputs on which the requested quantity degenerates to 0/0,
// e.g. both drives switched off.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

// The generator kernel is not one-dimensional, so "the" steady state is
// ill-defined.  Carries the smallest singular values for diagnosis.
class DegenerateSteadyStateError : public Error {
public:
    DegenerateSteadyStateError(const std::string& what, std::vector<double> smallest)
        : Error(what), smallest_singular_values_(std::move(smallest)) {}

    const std::vector<double>& smallest_singular_values() const {
        return smallest_singular_values_;
    }

private:
    std::vector<double> smallest_singular_values_;
};

// Time integration ended before the derivative norm reached tolerance.
class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& what, double final_derivative_norm)
        : Error(what), final_derivative_norm_(final_derivative_norm) {}

    double final_derivative_norm() const { return final_derivative_norm_; }

private:
    double final_derivative_norm_;
};

// A conserved quantity drifted beyond tolerance during integration.
class NumericalInstabilityError : public Error {
public:
    NumericalInstabilityError(const std::string& what, double time)
        : Error(what), time_(time) {}

    double time() const { return time_; }

private:
    double time_;
};

// peak_width could not identify a unique interior peak with both
// threshold crossings inside the scan.
class AmbiguousPeakError : public Error {
public:
    using Error::Error;
};

}  // namespace qfringe
