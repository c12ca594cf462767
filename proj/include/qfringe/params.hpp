#pragma once

#include <cmath>
#include <numbers>

#include "qfringe/errors.hpp"

namespace qfringe {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Drive configuration of the four-level closed-loop system.  Rabi
// frequencies and the detuning are rates; with gamma == 1 (the default
// convention) they are read directly in units of gamma.  The Rabi
// frequencies are real and non-negative: all field phase lives in phi.
struct DriveParams {
    double omega_sigma = 0.0;  // sigma-transition Rabi frequency, >= 0
    double omega_pi = 0.0;     // pi-transition Rabi frequency, >= 0
    double phi = 0.0;          // relative phase of the two drives, radians
    double delta = 0.0;        // detuning of both excited levels
    double gamma = 1.0;        // spontaneous decay rate, > 0
};

// Throws InvalidInputError unless p satisfies the type invariants.
inline void validate(const DriveParams& p) {
    const bool finite = std::isfinite(p.omega_sigma) && std::isfinite(p.omega_pi) &&
                        std::isfinite(p.phi) && std::isfinite(p.delta) &&
                        std::isfinite(p.gamma);
    if (!finite) {
        throw InvalidInputError("DriveParams: all fields must be finite");
    }
    if (p.omega_sigma < 0.0 || p.omega_pi < 0.0) {
        throw InvalidInputError(
            "DriveParams: Rabi frequencies must be non-negative (phase belongs in phi)");
    }
    if (p.gamma <= 0.0) {
        throw InvalidInputError("DriveParams: gamma must be positive");
    }
}

// True when both drives are negligible relative to the decay rate; the
// steady state is then not unique and ratio quantities degenerate to 0/0.
inline bool drives_degenerate(const DriveParams& p) {
    return p.omega_sigma < 1e-6 * p.gamma && p.omega_pi < 1e-6 * p.gamma;
}

}  // namespace qfringe
