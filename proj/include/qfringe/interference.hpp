#pragma once

#include <vector>

#include "qfringe/steady_state.hpp"

namespace qfringe {

// Fluorescence below this excited population is flagged undetectable.
inline constexpr double kDetectabilityFloor = 1e-9;

// Lowering components of the two dipole transitions along x, y, z; the
// raising components are the conjugate transposes.  Each component has
// exactly two nonzero entries of magnitude mu.
struct DipoleSet {
    double scale = 1.0;  // mu
    Matrix4c lower_x;
    Matrix4c lower_y;
    Matrix4c lower_z;

    static DipoleSet standard(double mu = 1.0);
};

// Detection-phase sampling for the two-atom fringe.  direct_phase carries
// the phases delta themselves; geometric maps screen positions x through
// the far-field small-angle relation delta = k*d*x/L (L >> d is the
// caller's responsibility).
struct FringeSpec {
    enum class Mode { direct_phase, geometric };

    Mode mode = Mode::direct_phase;
    std::vector<double> phases;         // direct mode
    double separation = 0.0;            // geometric: atom spacing d > 0
    double screen_distance = 0.0;       // geometric: screen distance L > 0
    double wave_number = 0.0;           // geometric: k != 0
    std::vector<double> screen_coords;  // geometric: screen positions

    static FringeSpec direct(std::vector<double> phases);
    static FringeSpec geometric(double d, double L, double k, std::vector<double> xs);

    // Materialized detection phases; validates the spec.
    std::vector<double> phase_grid() const;
};

struct VisibilityReport {
    double visibility = 0.0;        // in [0, 1/2] on resonance
    double n_e = 0.0;
    double sum_rule_residual = 0.0; // |V + n_e - 1/2|
    bool detectable = false;        // n_e >= kDetectabilityFloor
    Provenance provenance = Provenance::analytic;
};

struct CrossTerms {
    double auto_x = 0.0;   // single-atom x-channel strength, mu^2 * n_e
    double auto_z = 0.0;   // single-atom z-channel strength, mu^2 * n_e
    Complex cross_x{};     // two-atom x interference weight, mu^2 * |rho_sigma|^2
    Complex cross_z{};     // two-atom z interference weight, mu^2 * |rho_pi|^2
};

// mu = 1 convention throughout.
CrossTerms cross_terms(const SteadyStateSolution& s);

// I(delta) = 4*n_e + 2*(|rho_sigma|^2 + |rho_pi|^2)*cos(delta).  This is
// 4*n_e*(1 + V*cos(delta)) wherever n_e > 0, and stays finite at the dark
// point where the ratio form of V is 0/0.
double intensity_at(const SteadyStateSolution& s, double delta);

// V = (1/2)(ws^2 + wp^2)/D from the resonant closed forms, with the dark
// point handled by the algebraic cancellation (V -> 1/2, detectable false).
VisibilityReport visibility_closed_form(const DriveParams& p);

// |V + n_e - 1/2| via the closed forms; the identity holds for all
// resonant parameters.
double sum_rule_residual(const DriveParams& p);

struct PhaseExtremes {
    double v_max = 0.0;
    double n_e_min = 0.0;  // v_max + n_e_min = 1/2
};

// Extremes attained at phi = pi/2:
// v_max = (1/2) s2 / (s2 + 2 (ws^2 - wp^2)^2).
PhaseExtremes extremes_at_phase_pi_half(double omega_sigma, double omega_pi);

// (I_max - I_min)/(I_max + I_min) over the sampled grid.  The grid must
// span at least a full period up to its own resolution:
// max - min >= 2*pi*(1 - 1/n).  Throws DegenerateInputError when the
// pattern carries no light (I identically zero).
double visibility_from_pattern(const SteadyStateSolution& s, const FringeSpec& spec);

}  // namespace qfringe
