#include "qfringe/interference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qfringe {

DipoleSet DipoleSet::standard(double mu) {
    if (!std::isfinite(mu) || mu == 0.0) {
        throw InvalidInputError("DipoleSet: mu must be finite and nonzero");
    }
    DipoleSet d;
    d.scale = mu;
    d.lower_x = Matrix4c::Zero();
    d.lower_y = Matrix4c::Zero();
    d.lower_z = Matrix4c::Zero();
    // x: |1><4| + |2><3|,  y: -i(|1><4| - |2><3|),  z: |2><4| - |1><3|.
    d.lower_x(0, 3) = mu;
    d.lower_x(1, 2) = mu;
    d.lower_y(0, 3) = Complex(0.0, -mu);
    d.lower_y(1, 2) = Complex(0.0, mu);
    d.lower_z(1, 3) = mu;
    d.lower_z(0, 2) = -mu;
    return d;
}

FringeSpec FringeSpec::direct(std::vector<double> phases) {
    FringeSpec spec;
    spec.mode = Mode::direct_phase;
    spec.phases = std::move(phases);
    return spec;
}

FringeSpec FringeSpec::geometric(double d, double L, double k, std::vector<double> xs) {
    FringeSpec spec;
    spec.mode = Mode::geometric;
    spec.separation = d;
    spec.screen_distance = L;
    spec.wave_number = k;
    spec.screen_coords = std::move(xs);
    return spec;
}

std::vector<double> FringeSpec::phase_grid() const {
    std::vector<double> grid;
    if (mode == Mode::direct_phase) {
        grid = phases;
    } else {
        if (!(std::isfinite(separation) && separation > 0.0)) {
            throw InvalidSpecError("FringeSpec: geometric mode needs separation > 0");
        }
        if (!(std::isfinite(screen_distance) && screen_distance > 0.0)) {
            throw InvalidSpecError("FringeSpec: geometric mode needs screen_distance > 0");
        }
        if (!(std::isfinite(wave_number) && wave_number != 0.0)) {
            throw InvalidSpecError("FringeSpec: geometric mode needs a nonzero wave number");
        }
        grid.reserve(screen_coords.size());
        const double slope = wave_number * separation / screen_distance;
        for (double x : screen_coords) {
            grid.push_back(slope * x);
        }
    }
    if (grid.empty()) {
        throw InvalidSpecError("FringeSpec: phase grid is empty");
    }
    for (double v : grid) {
        if (!std::isfinite(v)) {
            throw InvalidSpecError("FringeSpec: phase grid contains non-finite values");
        }
    }
    return grid;
}

CrossTerms cross_terms(const SteadyStateSolution& s) {
    if (!(std::isfinite(s.n_e) && std::isfinite(std::abs(s.rho_sigma)) &&
          std::isfinite(std::abs(s.rho_pi)))) {
        throw InvalidInputError("cross_terms: solution summaries must be finite");
    }
    CrossTerms c;
    c.auto_x = s.n_e;
    c.auto_z = s.n_e;
    c.cross_x = s.rho_sigma * std::conj(s.rho_sigma);
    c.cross_z = s.rho_pi * std::conj(s.rho_pi);
    return c;
}

double intensity_at(const SteadyStateSolution& s, double delta) {
    const double coherent = std::norm(s.rho_sigma) + std::norm(s.rho_pi);
    return 4.0 * s.n_e + 2.0 * coherent * std::cos(delta);
}

VisibilityReport visibility_closed_form(const DriveParams& p) {
    validate(p);
    if (p.delta != 0.0) {
        throw UnsupportedRegimeError(
            "visibility_closed_form: resonance only (delta = 0); evaluate the pattern from a "
            "numeric steady state instead");
    }
    if (drives_degenerate(p)) {
        throw DegenerateInputError("visibility_closed_form: both drives vanish");
    }

    const double ws = p.omega_sigma / p.gamma;
    const double wp = p.omega_pi / p.gamma;
    const double s2 = ws * ws + wp * wp;
    const double d = closed_form_denominator(ws, wp, p.phi);

    VisibilityReport report;
    report.visibility = 0.5 * s2 / d;
    report.n_e = 0.5 * (1.0 - s2 / d);
    report.sum_rule_residual = std::abs(report.visibility + report.n_e - 0.5);
    report.detectable = report.n_e >= kDetectabilityFloor;
    report.provenance = Provenance::analytic;
    return report;
}

double sum_rule_residual(const DriveParams& p) {
    return visibility_closed_form(p).sum_rule_residual;
}

PhaseExtremes extremes_at_phase_pi_half(double omega_sigma, double omega_pi) {
    if (!(std::isfinite(omega_sigma) && std::isfinite(omega_pi))) {
        throw InvalidInputError("extremes_at_phase_pi_half: drives must be finite");
    }
    if (omega_sigma < 0.0 || omega_pi < 0.0) {
        throw InvalidInputError("extremes_at_phase_pi_half: drives must be non-negative");
    }
    const double s2 = omega_sigma * omega_sigma + omega_pi * omega_pi;
    if (s2 <= 0.0) {
        throw DegenerateInputError("extremes_at_phase_pi_half: both drives vanish");
    }
    const double dsq = omega_sigma * omega_sigma - omega_pi * omega_pi;
    PhaseExtremes e;
    e.v_max = 0.5 * s2 / (s2 + 2.0 * dsq * dsq);
    e.n_e_min = 0.5 - e.v_max;
    return e;
}

double visibility_from_pattern(const SteadyStateSolution& s, const FringeSpec& spec) {
    const std::vector<double> grid = spec.phase_grid();
    const auto n = static_cast<double>(grid.size());
    if (grid.size() < 2) {
        throw InvalidSpecError("visibility_from_pattern: need at least two phase samples");
    }
    const auto [lo_it, hi_it] = std::minmax_element(grid.begin(), grid.end());
    const double span = *hi_it - *lo_it;
    // Full period up to the grid's own resolution.
    const double required = kTwoPi * (1.0 - 1.0 / n) * (1.0 - 1e-12);
    if (span < required) {
        throw InvalidSpecError("visibility_from_pattern: phase grid spans less than one period");
    }

    double i_max = -std::numeric_limits<double>::infinity();
    double i_min = std::numeric_limits<double>::infinity();
    for (double delta : grid) {
        const double value = intensity_at(s, delta);
        i_max = std::max(i_max, value);
        i_min = std::min(i_min, value);
    }
    const double total = i_max + i_min;
    if (total <= 0.0) {
        throw DegenerateInputError(
            "visibility_from_pattern: pattern carries no light (dark state)");
    }
    return (i_max - i_min) / total;
}

}  // namespace qfringe
