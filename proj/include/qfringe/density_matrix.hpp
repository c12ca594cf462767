#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qfringe/errors.hpp"

namespace qfringe {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;
using Matrix16c = Eigen::Matrix<Complex, 16, 16>;
using Vector16c = Eigen::Matrix<Complex, 16, 1>;

// max_ij |m(i,j) - conj(m(j,i))|
double hermiticity_defect(const Matrix4c& m);

// |tr(m) - 1|
double trace_defect(const Matrix4c& m);

// Smallest eigenvalue of the Hermitized matrix (m + m^dagger)/2.
double min_eigenvalue(const Matrix4c& m);

// 4x4 Hermitian unit-trace state over the basis |1>..|4>; |1>,|2> are the
// ground sublevels, |3>,|4> the excited ones.  Positivity is checked where
// an operation depends on it, not on construction.
class DensityMatrix {
public:
    // Tag for callers that certify the invariants themselves (integrator
    // inner loop); the checked constructor is the default entry point.
    struct Unchecked {};

    // Validates Hermiticity and unit trace to 1e-12.
    explicit DensityMatrix(const Matrix4c& m);
    DensityMatrix(const Matrix4c& m, Unchecked) : m_(m) {}

    // diag(1/2, 1/2, 0, 0): the unpolarized pre-drive ground state.
    static DensityMatrix ground_mixture();
    // |i><i| for a 0-based state index in [0, 3].
    static DensityMatrix pure(int state_index);

    const Matrix4c& matrix() const { return m_; }

    double n_g() const { return (m_(0, 0) + m_(1, 1)).real(); }
    double n_e() const { return (m_(2, 2) + m_(3, 3)).real(); }

    // Coherence combinations sourcing the sigma- and pi-polarized light.
    Complex rho_sigma() const { return m_(2, 1) + m_(3, 0); }
    Complex rho_pi() const { return m_(3, 1) - m_(2, 0); }

private:
    Matrix4c m_;
};

}  // namespace qfringe
