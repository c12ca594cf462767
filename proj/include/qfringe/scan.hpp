#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qfringe/interference.hpp"

namespace qfringe {

// Uniform grid of count points from start to stop inclusive.
std::vector<double> linspace(double start, double stop, int count);

enum class SweepAxis { omega_sigma, omega_pi, phi, ratio_r, position_ky };

const char* to_string(SweepAxis a);
std::optional<SweepAxis> parse_axis(const std::string& name);

struct AxisSpec {
    SweepAxis axis;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;  // >= 2, linear spacing
};

double axis_value(const AxisSpec& a, int i);

// Parameters not swept.  ratio derives omega_pi = r * omega_sigma; a
// position_ky axis derives omega_pi = fixed.omega_pi * sin(ky), i.e. the
// fixed omega_pi is the standing-wave peak amplitude.
struct FixedParams {
    std::optional<double> omega_sigma;
    std::optional<double> omega_pi;
    std::optional<double> phi;
    std::optional<double> ratio;
    double delta = 0.0;
    double gamma = 1.0;
};

// axes may be empty, in which case the sweep evaluates the single fixed
// point.  Every drive parameter must be bound exactly once, by an axis,
// a fixed value, or a derivation rule.
struct SweepGrid {
    std::vector<AxisSpec> axes;
    FixedParams fixed;
};

// Throws InvalidSpecError on malformed grids, before any evaluation.
void validate(const SweepGrid& grid);

enum class Engine { automatic, analytic, numeric };

const char* to_string(Engine e);
std::optional<Engine> parse_engine(const std::string& name);

struct SweepRow {
    std::vector<double> axis_values;  // one per axis, in axis order
    DriveParams params;               // resolved drive at this point
    double visibility = 0.0;          // NaN on degenerate rows
    double n_e = 0.0;                 // NaN on degenerate rows
    bool detectable = false;
    bool degenerate = false;          // both drives below 1e-6: flagged, not fatal
};

struct SweepTable {
    std::vector<std::string> axis_names;
    std::vector<SweepRow> rows;
};

// One row per grid point in lexicographic axis order (first axis slowest).
// automatic selects the closed forms on resonance and the null-space solve
// off resonance; analytic refuses delta != 0 up front.
SweepTable run_sweep(const SweepGrid& grid, Engine engine = Engine::automatic);

// Spatial scan along a standing pi-drive: omega_pi(y) = omega * sin(ky),
// with the traveling sigma-drive fixed at omega_sigma (default omega) and
// phi defaulting to pi/2.
struct StandingWaveSpec {
    double omega = 10.0;               // standing-wave peak Rabi frequency, > 0
    std::vector<double> ky_grid;       // dimensionless positions
    std::optional<double> omega_sigma; // defaults to omega
    double phi = 0.5 * kPi;

    static StandingWaveSpec uniform(double omega, int points, double start = 0.0,
                                    double stop = kTwoPi);
};

void validate(const StandingWaveSpec& spec);

struct StandingWaveRow {
    double ky = 0.0;
    double r = 0.0;  // sin(ky), recorded signed; evaluated through |omega_pi|
    double visibility = 0.0;
    double n_e = 0.0;
    bool detectable = false;
    bool degenerate = false;
};

std::vector<StandingWaveRow> standing_wave_scan(const StandingWaveSpec& spec);

// Interval length around the unique global maximum where
// y >= threshold_fraction * y_peak, with linear interpolation at the
// crossings.  Throws AmbiguousPeakError for edge peaks, ties, or a
// threshold never crossed inside the scan.
double peak_width(const std::vector<double>& x, const std::vector<double>& y,
                  double threshold_fraction);
// Convenience overload for single-axis sweep tables (x = axis, y = V).
double peak_width(const SweepTable& table, double threshold_fraction);

// Named figure-reproduction grids.  omega_override rescales the drive
// strength where the preset has one (fig2d, fig3a-fig3d); the surface
// presets fig2a-fig2c ignore it.
struct Preset {
    std::string name;
    std::variant<SweepGrid, StandingWaveSpec> config;
};

std::optional<Preset> preset_by_name(const std::string& name,
                                     std::optional<double> omega_override = std::nullopt);
std::vector<std::string> preset_names();

}  // namespace qfringe
