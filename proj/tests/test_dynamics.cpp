#include <doctest.h>

#include <cmath>

#include "qfringe/dynamics.hpp"
#include "test_support.hpp"

using namespace qfringe;

namespace {

double max_abs(const Matrix4c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("step ceiling tracks the fastest rate") {
    CHECK(step_ceiling(DriveParams{0.0, 0.0, 0.0, 0.0}) == doctest::Approx(0.05));
    CHECK(step_ceiling(DriveParams{10.0, 0.0, 0.0, 0.0}) == doctest::Approx(0.005));
    CHECK(step_ceiling(DriveParams{0.0, 0.0, 0.0, -20.0}) == doctest::Approx(0.0025));
}

TEST_CASE("integration rejects steps above the ceiling") {
    IntegrationSpec spec;
    spec.step = 0.01;
    spec.t_max = 1.0;
    const DriveParams p{10.0, 1.0, 0.0, 0.0};  // ceiling 0.005
    CHECK_THROWS_AS(integrate(DensityMatrix::ground_mixture(), p, spec), InvalidSpecError);

    spec.step = -0.1;
    CHECK_THROWS_AS(integrate(DensityMatrix::ground_mixture(), p, spec), InvalidSpecError);
    spec.step = 0.004;
    spec.t_max = 0.0;
    CHECK_THROWS_AS(integrate(DensityMatrix::ground_mixture(), p, spec), InvalidSpecError);
}

TEST_CASE("drive-free ground mixture stays put") {
    IntegrationSpec spec;
    spec.step = 0.05;
    spec.t_max = 3.0;
    const auto trajectory =
        integrate(DensityMatrix::ground_mixture(), DriveParams{0.0, 0.0, 0.0, 0.0}, spec, 7);
    REQUIRE(trajectory.size() > 2);
    const Matrix4c rho0 = DensityMatrix::ground_mixture().matrix();
    for (const auto& sample : trajectory) {
        CHECK(max_abs(sample.state.matrix() - rho0) == 0.0);
    }
    CHECK(trajectory.front().t == 0.0);
    CHECK(trajectory.back().t == 3.0);
}

TEST_CASE("relaxation drives a polarized state to the resonant equilibrium") {
    IntegrationSpec spec;
    spec.step = 0.04;
    spec.t_max = 40.0;
    const auto trajectory =
        integrate(DensityMatrix::pure(0), DriveParams{1.0, 1.0, 0.0, 0.0}, spec, 1 << 20);
    CHECK(std::abs(trajectory.back().state.n_e() - 0.4) < 1e-6);
}

TEST_CASE("every sample keeps unit trace and Hermiticity") {
    detail::Rng rng(21);
    for (int k = 0; k < 100; ++k) {
        const DensityMatrix rho0(test::random_state(rng), DensityMatrix::Unchecked{});
        DriveParams p = test::random_resonant_params(rng, 0.2, 8.0);
        p.delta = rng.uniform(-2.0, 2.0);
        IntegrationSpec spec;
        spec.step = 0.9 * step_ceiling(p);
        spec.t_max = 2.0;
        for (const auto& sample : integrate(rho0, p, spec, 10)) {
            CHECK(trace_defect(sample.state.matrix()) < 1e-9);
            CHECK(hermiticity_defect(sample.state.matrix()) < 1e-9);
        }
    }
}

TEST_CASE("trajectory samples stay positive semidefinite") {
    detail::Rng rng(22);
    for (int k = 0; k < 10; ++k) {
        const DensityMatrix rho0(test::random_state(rng), DensityMatrix::Unchecked{});
        const DriveParams p = test::random_resonant_params(rng, 0.2, 8.0);
        IntegrationSpec spec;
        spec.step = 0.9 * step_ceiling(p);
        spec.t_max = 6.0;
        for (const auto& sample : integrate(rho0, p, spec, 5)) {
            CHECK(min_eigenvalue(sample.state.matrix()) >= -1e-8);
        }
    }
}

TEST_CASE("halving the step cuts the trajectory error sixteenfold") {
    const DriveParams p{1.2, 0.8, 0.7, 0.5};
    const DensityMatrix rho0 = DensityMatrix::pure(0);
    const auto end_state = [&](double step) {
        IntegrationSpec spec;
        spec.step = step;
        spec.t_max = 5.0;
        return integrate(rho0, p, spec, 1 << 20).back().state.matrix();
    };
    const Matrix4c reference = end_state(0.00125);
    const double coarse = max_abs(end_state(0.04) - reference);
    const double fine = max_abs(end_state(0.02) - reference);
    const double factor = coarse / fine;
    CHECK(factor >= 8.0);
    CHECK(factor <= 32.0);
}

TEST_CASE("time rescaling by a common factor is exact") {
    // Doubling all rates while halving step and horizon must reproduce the
    // identical trajectory: every RK4 operation commutes with the scaling.
    const DensityMatrix rho0 = DensityMatrix::pure(1);
    IntegrationSpec base;
    base.step = 0.02;
    base.t_max = 4.0;
    IntegrationSpec scaled;
    scaled.step = 0.01;
    scaled.t_max = 2.0;
    const auto a = integrate(rho0, DriveParams{1.0, 0.5, 0.9, 0.7, 1.0}, base, 1 << 20);
    const auto b = integrate(rho0, DriveParams{2.0, 1.0, 0.9, 1.4, 2.0}, scaled, 1 << 20);
    CHECK(max_abs(a.back().state.matrix() - b.back().state.matrix()) < 1e-14);
}

TEST_CASE("steady-state hunt reaches the resonant equilibrium") {
    IntegrationSpec spec;
    spec.step = 0.04;
    spec.t_max = 200.0;
    spec.convergence_tol = 1e-8;
    const auto result =
        evolve_to_steady(DensityMatrix::ground_mixture(), DriveParams{1.0, 1.0, 0.0, 0.0}, spec);
    CHECK(std::abs(result.state.n_e() - 0.4) < 1e-6);
    CHECK(result.time > 0.0);
}

TEST_CASE("steady-state hunt finds the dark point") {
    IntegrationSpec spec;
    spec.step = 0.04;
    spec.t_max = 200.0;
    spec.convergence_tol = 1e-8;
    const auto result = evolve_to_steady(DensityMatrix::ground_mixture(),
                                         DriveParams{1.0, 1.0, 0.5 * kPi, 0.0}, spec);
    CHECK(result.state.n_e() < 1e-6);
}

TEST_CASE("undamped ground coherence survives the drive-free hunt") {
    Matrix4c rho = Matrix4c::Zero();
    rho(0, 0) = 0.5;
    rho(1, 1) = 0.5;
    rho(0, 1) = 0.5;
    rho(1, 0) = 0.5;
    IntegrationSpec spec;
    spec.step = 0.05;
    spec.t_max = 10.0;
    const auto result =
        evolve_to_steady(DensityMatrix(rho), DriveParams{0.0, 0.0, 0.0, 0.0}, spec);
    CHECK(result.state.matrix()(0, 1) == Complex(0.5));
    CHECK(result.time == 0.0);  // already stationary
}

TEST_CASE("steady-state hunt reports non-convergence") {
    IntegrationSpec spec;
    spec.step = 0.04;
    spec.t_max = 1.0;
    spec.convergence_tol = 1e-14;
    try {
        evolve_to_steady(DensityMatrix::ground_mixture(), DriveParams{1.0, 1.0, 0.0, 0.0}, spec);
        FAIL("expected NonConvergenceError");
    } catch (const NonConvergenceError& e) {
        CHECK(e.final_derivative_norm() > 0.0);
    }
}
