#include "qfringe/lindblad.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace qfringe {

double hermiticity_defect(const Matrix4c& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double trace_defect(const Matrix4c& m) {
    return std::abs(m.trace() - Complex(1.0, 0.0));
}

double min_eigenvalue(const Matrix4c& m) {
    const Matrix4c h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

DensityMatrix::DensityMatrix(const Matrix4c& m) : m_(m) {
    if (!m.allFinite()) {
        throw InvalidInputError("DensityMatrix: entries must be finite");
    }
    if (hermiticity_defect(m) > 1e-12) {
        throw InvalidInputError("DensityMatrix: matrix is not Hermitian to 1e-12");
    }
    if (trace_defect(m) > 1e-12) {
        throw InvalidInputError("DensityMatrix: trace differs from 1 by more than 1e-12");
    }
}

DensityMatrix DensityMatrix::ground_mixture() {
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = 0.5;
    m(1, 1) = 0.5;
    return DensityMatrix(m, Unchecked{});
}

DensityMatrix DensityMatrix::pure(int state_index) {
    if (state_index < 0 || state_index > 3) {
        throw InvalidInputError("DensityMatrix::pure: state index must be in [0, 3]");
    }
    Matrix4c m = Matrix4c::Zero();
    m(state_index, state_index) = 1.0;
    return DensityMatrix(m, Unchecked{});
}

Vector16c vec(const Matrix4c& rho) {
    Vector16c v;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            v(vec_index(i, j)) = rho(i, j);
        }
    }
    return v;
}

Matrix4c unvec(const Vector16c& v) {
    Matrix4c rho;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            rho(i, j) = v(vec_index(i, j));
        }
    }
    return rho;
}

Matrix4c hamiltonian_matrix(double omega_sigma, double omega_pi, double phi, double delta) {
    // Exact reduction: makes the builder bit-for-bit 2*pi-periodic for any
    // phases whose shift by 2*pi is representable.
    const double ph = std::remainder(phi, kTwoPi);
    const Complex e_minus(std::cos(ph), -std::sin(ph));  // exp(-i phi)

    Matrix4c h = Matrix4c::Zero();
    h(0, 2) = omega_pi;
    h(0, 3) = -omega_sigma * e_minus;
    h(1, 2) = -omega_sigma * e_minus;
    h(1, 3) = -omega_pi;
    h(2, 0) = omega_pi;
    h(2, 1) = -omega_sigma * std::conj(e_minus);
    h(3, 0) = -omega_sigma * std::conj(e_minus);
    h(3, 1) = -omega_pi;
    h(2, 2) = delta;
    h(3, 3) = delta;
    return h;
}

Matrix4c relaxation_matrix(const Matrix4c& rho, double gamma) {
    Matrix4c l = Matrix4c::Zero();
    const Complex feed = gamma * (rho(2, 2) + rho(3, 3));
    l(0, 0) = feed;
    l(1, 1) = feed;
    // rho(0,1) and rho(1,0) stay exactly zero: the ground coherence is undamped.
    l(0, 2) = -gamma * rho(0, 2);
    l(0, 3) = -gamma * rho(0, 3);
    l(1, 2) = -gamma * rho(1, 2);
    l(1, 3) = -gamma * rho(1, 3);
    l(2, 0) = -gamma * rho(2, 0);
    l(3, 0) = -gamma * rho(3, 0);
    l(2, 1) = -gamma * rho(2, 1);
    l(3, 1) = -gamma * rho(3, 1);
    l(2, 2) = -2.0 * gamma * rho(2, 2);
    l(2, 3) = -2.0 * gamma * rho(2, 3);
    l(3, 2) = -2.0 * gamma * rho(3, 2);
    l(3, 3) = -2.0 * gamma * rho(3, 3);
    return l;
}

Matrix16c liouvillian_from(const Matrix4c& hamiltonian, double gamma) {
    // Column by column: the image of each basis matrix E_ij under the
    // linear map rho -> -i[H, rho] + L[rho].
    const Complex minus_i(0.0, -1.0);
    Matrix16c a;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            Matrix4c e = Matrix4c::Zero();
            e(i, j) = 1.0;
            const Matrix4c image =
                minus_i * (hamiltonian * e - e * hamiltonian) + relaxation_matrix(e, gamma);
            a.col(vec_index(i, j)) = vec(image);
        }
    }
    return a;
}

Matrix16c liouvillian_matrix(double omega_sigma, double omega_pi, double phi, double delta,
                             double gamma) {
    return liouvillian_from(hamiltonian_matrix(omega_sigma, omega_pi, phi, delta), gamma);
}

Matrix4c build_hamiltonian(const DriveParams& p) {
    validate(p);
    return hamiltonian_matrix(p.omega_sigma, p.omega_pi, p.phi, p.delta);
}

Matrix4c apply_relaxation(const Matrix4c& rho, double gamma) {
    if (!std::isfinite(gamma) || gamma <= 0.0) {
        throw InvalidInputError("apply_relaxation: gamma must be positive and finite");
    }
    return relaxation_matrix(rho, gamma);
}

Matrix4c master_rhs(const Matrix4c& rho, const DriveParams& p) {
    validate(p);
    const Matrix4c h = hamiltonian_matrix(p.omega_sigma, p.omega_pi, p.phi, p.delta);
    const Complex minus_i(0.0, -1.0);
    return minus_i * (h * rho - rho * h) + relaxation_matrix(rho, p.gamma);
}

SuperOperator build_superoperator(const DriveParams& p) {
    validate(p);
    return SuperOperator{liouvillian_matrix(p.omega_sigma, p.omega_pi, p.phi, p.delta, p.gamma)};
}

}  // namespace qfringe
