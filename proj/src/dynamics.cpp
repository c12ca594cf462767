#include "qfringe/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qfringe {

namespace {

// RK4 right-hand side on the raw matrix; parameters pre-validated.
Matrix4c rhs(const Matrix4c& rho, const Matrix4c& h, double gamma) {
    const Complex minus_i(0.0, -1.0);
    return minus_i * (h * rho - rho * h) + relaxation_matrix(rho, gamma);
}

Matrix4c rk4_step(const Matrix4c& rho, const Matrix4c& h, double gamma, double dt) {
    const Matrix4c k1 = rhs(rho, h, gamma);
    const Matrix4c k2 = rhs(rho + (0.5 * dt) * k1, h, gamma);
    const Matrix4c k3 = rhs(rho + (0.5 * dt) * k2, h, gamma);
    const Matrix4c k4 = rhs(rho + dt * k3, h, gamma);
    return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double derivative_norm(const Matrix4c& rho, const Matrix4c& h, double gamma) {
    return rhs(rho, h, gamma).cwiseAbs().maxCoeff();
}

}  // namespace

double step_ceiling(const DriveParams& p) {
    const double scale =
        std::max({p.gamma, p.omega_sigma, p.omega_pi, std::abs(p.delta)});
    return 0.05 / scale;
}

void validate(const IntegrationSpec& spec, const DriveParams& p) {
    validate(p);
    if (!(std::isfinite(spec.step) && std::isfinite(spec.t_max) &&
          std::isfinite(spec.convergence_tol))) {
        throw InvalidSpecError("IntegrationSpec: all fields must be finite");
    }
    if (spec.step <= 0.0 || spec.t_max <= 0.0 || spec.convergence_tol <= 0.0) {
        throw InvalidSpecError("IntegrationSpec: step, t_max, convergence_tol must be positive");
    }
    const double ceiling = step_ceiling(p);
    // Slack of a few ulp so a step computed as the ceiling itself passes.
    if (spec.step > ceiling * (1.0 + 1e-12)) {
        throw InvalidSpecError("IntegrationSpec: step " + std::to_string(spec.step) +
                               " exceeds the stability ceiling " + std::to_string(ceiling));
    }
}

std::vector<TrajectorySample> integrate(const DensityMatrix& rho0, const DriveParams& p,
                                        const IntegrationSpec& spec, int sample_stride) {
    validate(spec, p);
    if (sample_stride < 1) {
        throw InvalidSpecError("integrate: sample_stride must be >= 1");
    }

    const Matrix4c h = hamiltonian_matrix(p.omega_sigma, p.omega_pi, p.phi, p.delta);
    const long n_steps = std::max<long>(
        1, static_cast<long>(std::ceil(spec.t_max / spec.step * (1.0 - 1e-12))));

    std::vector<TrajectorySample> samples;
    samples.reserve(static_cast<std::size_t>(n_steps / sample_stride) + 2);

    Matrix4c rho = rho0.matrix();
    auto emit = [&](double t) {
        const double drift = trace_defect(rho);
        if (drift > 1e-6) {
            throw NumericalInstabilityError(
                "integrate: trace drifted by " + std::to_string(drift) + " at t = " +
                    std::to_string(t),
                t);
        }
        samples.push_back(TrajectorySample{t, DensityMatrix(rho, DensityMatrix::Unchecked{})});
    };

    emit(0.0);
    for (long k = 1; k <= n_steps; ++k) {
        const double t_prev = static_cast<double>(k - 1) * spec.step;
        const double dt = (k == n_steps) ? spec.t_max - t_prev : spec.step;
        rho = rk4_step(rho, h, p.gamma, dt);
        const double t = (k == n_steps) ? spec.t_max : static_cast<double>(k) * spec.step;
        if (k % sample_stride == 0 || k == n_steps) {
            emit(t);
        }
    }
    return samples;
}

EvolveResult evolve_to_steady(const DensityMatrix& rho0, const DriveParams& p,
                              const IntegrationSpec& spec) {
    validate(spec, p);

    const Matrix4c h = hamiltonian_matrix(p.omega_sigma, p.omega_pi, p.phi, p.delta);
    Matrix4c rho = rho0.matrix();
    double t = 0.0;
    double norm = derivative_norm(rho, h, p.gamma);

    long k = 0;
    while (norm >= spec.convergence_tol) {
        if (t >= spec.t_max) {
            throw NonConvergenceError(
                "evolve_to_steady: derivative norm " + std::to_string(norm) +
                    " still above tolerance at t_max",
                norm);
        }
        const double dt = std::min(spec.step, spec.t_max - t);
        rho = rk4_step(rho, h, p.gamma, dt);
        ++k;
        t = std::min(static_cast<double>(k) * spec.step, spec.t_max);
        const double drift = trace_defect(rho);
        if (drift > 1e-6) {
            throw NumericalInstabilityError(
                "evolve_to_steady: trace drifted by " + std::to_string(drift) + " at t = " +
                    std::to_string(t),
                t);
        }
        norm = derivative_norm(rho, h, p.gamma);
    }
    return EvolveResult{DensityMatrix(rho, DensityMatrix::Unchecked{}), t};
}

}  // namespace qfringe
