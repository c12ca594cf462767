#pragma once

#include <complex>

#include "qfringe/density_matrix.hpp"
#include "qfringe/detail/rng.hpp"
#include "qfringe/params.hpp"

namespace qfringe::test {

// Hermitian with trace exactly 1 (up to rounding); not necessarily positive.
inline Matrix4c random_hermitian_unit_trace(detail::Rng& rng) {
    Matrix4c g;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            g(i, j) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        }
    }
    Matrix4c h = 0.5 * (g + g.adjoint().eval());
    const double tr = h.trace().real();
    h -= (tr / 4.0) * Matrix4c::Identity();
    h += 0.25 * Matrix4c::Identity();
    return h;
}

// Positive semidefinite unit-trace state (a physical density matrix).
inline Matrix4c random_state(detail::Rng& rng) {
    Matrix4c g;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            g(i, j) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        }
    }
    Matrix4c rho = g * g.adjoint();
    rho /= rho.trace().real();
    return rho;
}

inline DriveParams random_resonant_params(detail::Rng& rng, double lo = 0.1, double hi = 15.0) {
    DriveParams p;
    p.omega_sigma = rng.uniform(lo, hi);
    p.omega_pi = rng.uniform(lo, hi);
    p.phi = rng.uniform(0.0, kTwoPi);
    return p;
}

// Exact steady state at omega_sigma = omega_pi = 1, phi = 0 (rational
// entries, written out so tests do not depend on any solver).
inline Matrix4c unit_drive_steady_state() {
    const Complex i(0.0, 1.0);
    Matrix4c rho;
    rho << Complex(0.3), Complex(0.0), 0.1 * i, -0.1 * i,
           Complex(0.0), Complex(0.3), -0.1 * i, -0.1 * i,
           -0.1 * i, 0.1 * i, Complex(0.2), Complex(0.0),
           0.1 * i, 0.1 * i, Complex(0.0), Complex(0.2);
    return rho;
}

}  // namespace qfringe::test
