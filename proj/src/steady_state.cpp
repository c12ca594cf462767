#include "qfringe/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SVD>

namespace qfringe {

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::analytic: return "analytic";
        case Provenance::numeric_nullspace: return "numeric-nullspace";
        case Provenance::numeric_time: return "numeric-time";
    }
    return "unknown";
}

double closed_form_denominator(double omega_sigma, double omega_pi, double phi) {
    const double ph = std::remainder(phi, kTwoPi);
    const double ws2 = omega_sigma * omega_sigma;
    const double wp2 = omega_pi * omega_pi;
    const double s2 = ws2 + wp2;
    const double dsq = ws2 - wp2;
    return s2 + 2.0 * dsq * dsq + 4.0 * ws2 * wp2 * (std::cos(2.0 * ph) + 1.0);
}

SteadyStateSolution analytic_steady_state(const DriveParams& p) {
    validate(p);
    if (p.delta != 0.0) {
        throw UnsupportedRegimeError(
            "analytic_steady_state: closed forms hold on resonance only (delta = 0); "
            "use numeric_steady_state");
    }
    if (drives_degenerate(p)) {
        throw DegenerateInputError(
            "analytic_steady_state: both drives vanish; the closed forms are 0/0");
    }

    // gamma-normalized drives; identical to the raw values at gamma == 1.
    const double ws = p.omega_sigma / p.gamma;
    const double wp = p.omega_pi / p.gamma;
    const double ph = std::remainder(p.phi, kTwoPi);

    const double ws2 = ws * ws;
    const double wp2 = wp * wp;
    const double s2 = ws2 + wp2;
    const double d = closed_form_denominator(ws, wp, ph);

    SteadyStateSolution s;
    s.n_e = 0.5 * (1.0 - s2 / d);
    s.n_g = 1.0 - s.n_e;
    s.rho_sigma = Complex((wp2 - ws2) * std::sin(ph), (wp2 + ws2) * std::cos(ph)) * (ws / d);
    s.rho_pi = Complex(-ws2 * std::sin(2.0 * ph), wp2 + ws2 * std::cos(2.0 * ph)) * (wp / d);
    s.rho_full = std::nullopt;
    s.provenance = Provenance::analytic;
    return s;
}

Matrix4c solve_steady_from_superoperator(const Matrix16c& a) {
    // The d rho44/dt row is redundant (the trace functional spans the left
    // kernel), so it is replaced by the trace constraint.
    constexpr int trace_row = vec_index(3, 3);
    Matrix16c m = a;
    m.row(trace_row).setZero();
    for (int k = 0; k < 4; ++k) {
        m(trace_row, vec_index(k, k)) = 1.0;
    }
    Vector16c b = Vector16c::Zero();
    b(trace_row) = 1.0;

    const Vector16c x = m.partialPivLu().solve(b);

    Vector16c residual = a * x;
    residual(trace_row) = 0.0;
    const double res = residual.cwiseAbs().maxCoeff();
    if (!(res < 1e-10)) {
        throw Error("steady-state solve residual " + std::to_string(res) +
                    " exceeds 1e-10; generator may be singular beyond its trace redundancy");
    }

    const Matrix4c rho = unvec(x);
    return 0.5 * (rho + rho.adjoint());
}

namespace {

SteadyStateSolution summarize(const Matrix4c& rho, Provenance provenance) {
    DensityMatrix state(rho);
    SteadyStateSolution s;
    s.n_e = state.n_e();
    s.n_g = state.n_g();
    s.rho_sigma = state.rho_sigma();
    s.rho_pi = state.rho_pi();
    s.rho_full = std::move(state);
    s.provenance = provenance;
    return s;
}

}  // namespace

SteadyStateSolution numeric_steady_state(const DriveParams& p) {
    validate(p);
    const Matrix16c a =
        liouvillian_matrix(p.omega_sigma, p.omega_pi, p.phi, p.delta, p.gamma);

    // Scale-free degeneracy detection on the singular spectrum.
    Eigen::JacobiSVD<Matrix16c> svd(a);
    const auto& sv = svd.singularValues();
    if (sv(14) < 1e-8 * sv(0)) {
        std::vector<double> smallest{sv(15), sv(14), sv(13), sv(12)};
        std::string msg = "numeric_steady_state: generator kernel is not one-dimensional; "
                          "smallest singular values:";
        for (double v : smallest) {
            msg += " " + std::to_string(v);
        }
        throw DegenerateSteadyStateError(msg, std::move(smallest));
    }

    return summarize(solve_steady_from_superoperator(a), Provenance::numeric_nullspace);
}

IntegrationSpec default_steady_spec(const DriveParams& p) {
    IntegrationSpec spec;
    spec.step = step_ceiling(p);
    spec.t_max = 600.0 / p.gamma;
    spec.convergence_tol = 1e-9 * p.gamma;
    return spec;
}

SteadyStateSolution time_evolved_steady_state(const DriveParams& p,
                                              const IntegrationSpec& spec) {
    const EvolveResult result = evolve_to_steady(DensityMatrix::ground_mixture(), p, spec);
    return summarize(result.state.matrix(), Provenance::numeric_time);
}

SteadyStateSolution time_evolved_steady_state(const DriveParams& p) {
    return time_evolved_steady_state(p, default_steady_spec(p));
}

CrossValidationReport cross_validate(const DriveParams& p, double tol) {
    if (!(std::isfinite(tol) && tol > 0.0)) {
        throw InvalidInputError("cross_validate: tol must be positive and finite");
    }
    const SteadyStateSolution a = analytic_steady_state(p);
    const SteadyStateSolution n = numeric_steady_state(p);
    const SteadyStateSolution t = time_evolved_steady_state(p);

    double dev = 0.0;
    auto compare = [&dev](const SteadyStateSolution& lhs, const SteadyStateSolution& rhs) {
        dev = std::max(dev, std::abs(lhs.n_e - rhs.n_e));
        dev = std::max(dev, std::abs(lhs.rho_sigma - rhs.rho_sigma));
        dev = std::max(dev, std::abs(lhs.rho_pi - rhs.rho_pi));
    };
    compare(a, n);
    compare(a, t);
    compare(n, t);

    return CrossValidationReport{dev, dev < tol};
}

}  // namespace qfringe
