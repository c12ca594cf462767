#pragma once

#include "qfringe/density_matrix.hpp"
#include "qfringe/params.hpp"

namespace qfringe {

// Flattened generator: d vec(rho)/dt = matrix * vec(rho), with the
// row-major vectorization vec(rho)[4*i + j] = rho(i, j).  The convention
// is internal and never serialized.
struct SuperOperator {
    Matrix16c matrix;
};

constexpr int vec_index(int i, int j) { return 4 * i + j; }

Vector16c vec(const Matrix4c& rho);
Matrix4c unvec(const Vector16c& v);

// ---- mechanical layer -------------------------------------------------
// No parameter validation; signs are passed through verbatim.  These exist
// so sign/symmetry checks can probe the raw algebra.

// Interaction-picture Hamiltonian (hbar = 1).  phi is reduced modulo 2*pi
// with std::remainder, which is exact, so the builder is bit-for-bit
// periodic whenever phi + 2*pi itself does not round.
Matrix4c hamiltonian_matrix(double omega_sigma, double omega_pi, double phi, double delta);

// Spontaneous-decay action: ground gains gamma*(rho33 + rho44), optical
// coherences damp at gamma, the excited block at 2*gamma, and the ground
// coherence rho12 is left untouched (exactly zero entry).
Matrix4c relaxation_matrix(const Matrix4c& rho, double gamma);

Matrix16c liouvillian_from(const Matrix4c& hamiltonian, double gamma);
Matrix16c liouvillian_matrix(double omega_sigma, double omega_pi, double phi, double delta,
                             double gamma);

// ---- validated interface ----------------------------------------------

Matrix4c build_hamiltonian(const DriveParams& p);

// Requires gamma > 0 and finite; rho is the caller's responsibility
// (Hermitian input gives Hermitian output).
Matrix4c apply_relaxation(const Matrix4c& rho, double gamma);

// -i[H, rho] + L[rho]; Hermitian and traceless for Hermitian rho.
Matrix4c master_rhs(const Matrix4c& rho, const DriveParams& p);

SuperOperator build_superoperator(const DriveParams& p);

}  // namespace qfringe
