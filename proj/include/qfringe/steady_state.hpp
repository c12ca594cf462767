#pragma once

#include <optional>
#include <string>

#include "qfringe/dynamics.hpp"

namespace qfringe {

enum class Provenance { analytic, numeric_nullspace, numeric_time };

const char* to_string(Provenance p);

struct SteadyStateSolution {
    double n_e = 0.0;                      // excited population, in [0, 1/2] on resonance
    double n_g = 1.0;                      // ground population, n_e + n_g = 1
    Complex rho_sigma{};                   // rho32 + rho41
    Complex rho_pi{};                      // rho42 - rho31
    std::optional<DensityMatrix> rho_full; // absent on the analytic path
    Provenance provenance = Provenance::analytic;
};

// Shared denominator of the resonant closed forms, in gamma-units:
// D = s2 + 2*(ws^2 - wp^2)^2 + 4*ws^2*wp^2*(cos(2*phi) + 1), s2 = ws^2 + wp^2.
double closed_form_denominator(double omega_sigma, double omega_pi, double phi);

// Resonant closed forms.  Refuses delta != 0 (UnsupportedRegimeError: the
// formulas do not hold off resonance) and vanishing drives
// (DegenerateInputError: 0/0).  rho_full stays empty.
SteadyStateSolution analytic_steady_state(const DriveParams& p);

// Null-space solve of the 16x16 generator with the redundant d rho44/dt row
// replaced by the trace constraint.  Valid at any delta.  Throws
// DegenerateSteadyStateError when the kernel is not one-dimensional
// (second-smallest singular value below 1e-8 of the largest).
SteadyStateSolution numeric_steady_state(const DriveParams& p);

// Trace-constrained solve from a prebuilt generator; mechanical layer with
// no degeneracy detection, shared by numeric_steady_state and the raw
// symmetry checks.  The result is Hermitized before return.
Matrix4c solve_steady_from_superoperator(const Matrix16c& a);

// Long-time RK4 limit from the unpolarized ground state
// (provenance numeric-time).
SteadyStateSolution time_evolved_steady_state(const DriveParams& p, const IntegrationSpec& spec);
SteadyStateSolution time_evolved_steady_state(const DriveParams& p);

// Integrator settings used when no explicit spec is supplied: step at the
// stability ceiling, generous t_max, derivative tolerance well below the
// cross-validation targets.
IntegrationSpec default_steady_spec(const DriveParams& p);

struct CrossValidationReport {
    double max_abs_deviation = 0.0;
    bool pass = false;
};

// Pairwise comparison of the analytic, null-space, and time-evolved
// solutions on (n_e, rho_sigma, rho_pi).  Requires delta == 0 and
// nondegenerate drives.
CrossValidationReport cross_validate(const DriveParams& p, double tol);

}  // namespace qfringe
