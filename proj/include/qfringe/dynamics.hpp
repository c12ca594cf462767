#pragma once

#include <vector>

#include "qfringe/lindblad.hpp"

namespace qfringe {

// Fixed-step RK4 controls.  Time is measured in 1/gamma at gamma == 1.
struct IntegrationSpec {
    double step = 0.01;
    double t_max = 200.0;
    double convergence_tol = 1e-8;  // threshold on ||d rho/dt||_inf
};

// Largest step admitted for explicit integration at these parameters:
// 0.05 / max(gamma, omega_sigma, omega_pi, |delta|).  At the gamma == 1
// convention this reads 0.05 / max(1, omega_sigma, omega_pi, |delta|);
// using gamma instead of the literal 1 keeps the ceiling covariant under
// a simultaneous rescale of all rates.
double step_ceiling(const DriveParams& p);

// Throws InvalidSpecError if the spec is non-positive or the step exceeds
// the ceiling.
void validate(const IntegrationSpec& spec, const DriveParams& p);

struct TrajectorySample {
    double t;
    DensityMatrix state;
};

// Classical fourth-order Runge-Kutta advance of master_rhs from rho0 up to
// t_max.  Emits the initial state, every sample_stride-th step, and the
// final state.  Aborts with NumericalInstabilityError if the trace drifts
// by more than 1e-6.
std::vector<TrajectorySample> integrate(const DensityMatrix& rho0, const DriveParams& p,
                                        const IntegrationSpec& spec, int sample_stride = 1);

struct EvolveResult {
    DensityMatrix state;
    double time;  // first time at which ||master_rhs||_inf < convergence_tol
};

// Integrates until the instantaneous derivative norm falls below
// convergence_tol; throws NonConvergenceError (carrying the final norm)
// if t_max is reached first.
EvolveResult evolve_to_steady(const DensityMatrix& rho0, const DriveParams& p,
                              const IntegrationSpec& spec);

}  // namespace qfringe
