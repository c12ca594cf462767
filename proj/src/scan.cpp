#include "qfringe/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qfringe/steady_state.hpp"

namespace qfringe {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double grid_value(double start, double stop, int count, int i) {
    if (i == count - 1) {
        return stop;
    }
    return start + (stop - start) * (static_cast<double>(i) / static_cast<double>(count - 1));
}

}  // namespace

std::vector<double> linspace(double start, double stop, int count) {
    if (!(std::isfinite(start) && std::isfinite(stop))) {
        throw InvalidInputError("linspace: endpoints must be finite");
    }
    if (count < 2) {
        throw InvalidInputError("linspace: need at least two points");
    }
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        grid[static_cast<std::size_t>(i)] = grid_value(start, stop, count, i);
    }
    return grid;
}

const char* to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::omega_sigma: return "omega_sigma";
        case SweepAxis::omega_pi: return "omega_pi";
        case SweepAxis::phi: return "phi";
        case SweepAxis::ratio_r: return "ratio";
        case SweepAxis::position_ky: return "ky";
    }
    return "?";
}

std::optional<SweepAxis> parse_axis(const std::string& name) {
    std::string s = name;
    std::replace(s.begin(), s.end(), '-', '_');
    if (s == "omega_sigma") return SweepAxis::omega_sigma;
    if (s == "omega_pi") return SweepAxis::omega_pi;
    if (s == "phi") return SweepAxis::phi;
    if (s == "ratio" || s == "r") return SweepAxis::ratio_r;
    if (s == "ky") return SweepAxis::position_ky;
    return std::nullopt;
}

double axis_value(const AxisSpec& a, int i) {
    if (i < 0 || i >= a.count) {
        throw InvalidInputError("axis_value: index out of range");
    }
    return grid_value(a.start, a.stop, a.count, i);
}

const char* to_string(Engine e) {
    switch (e) {
        case Engine::automatic: return "auto";
        case Engine::analytic: return "analytic";
        case Engine::numeric: return "numeric";
    }
    return "?";
}

std::optional<Engine> parse_engine(const std::string& name) {
    if (name == "auto" || name == "automatic") return Engine::automatic;
    if (name == "analytic") return Engine::analytic;
    if (name == "numeric") return Engine::numeric;
    return std::nullopt;
}

namespace {

struct Bindings {
    int ws_axis = -1;
    int wp_axis = -1;
    int phi_axis = -1;
    int ratio_axis = -1;
    int ky_axis = -1;
};

Bindings locate_axes(const SweepGrid& grid) {
    Bindings b;
    for (int i = 0; i < static_cast<int>(grid.axes.size()); ++i) {
        int* slot = nullptr;
        switch (grid.axes[static_cast<std::size_t>(i)].axis) {
            case SweepAxis::omega_sigma: slot = &b.ws_axis; break;
            case SweepAxis::omega_pi: slot = &b.wp_axis; break;
            case SweepAxis::phi: slot = &b.phi_axis; break;
            case SweepAxis::ratio_r: slot = &b.ratio_axis; break;
            case SweepAxis::position_ky: slot = &b.ky_axis; break;
        }
        if (*slot != -1) {
            throw InvalidSpecError(std::string("sweep grid: duplicate axis ") +
                                   to_string(grid.axes[static_cast<std::size_t>(i)].axis));
        }
        *slot = i;
    }
    return b;
}

}  // namespace

void validate(const SweepGrid& grid) {
    for (const AxisSpec& a : grid.axes) {
        if (!(std::isfinite(a.start) && std::isfinite(a.stop))) {
            throw InvalidSpecError(std::string("sweep grid: axis ") + to_string(a.axis) +
                                   " has non-finite endpoints");
        }
        if (a.count < 2) {
            throw InvalidSpecError(std::string("sweep grid: axis ") + to_string(a.axis) +
                                   " needs at least two points");
        }
        const bool non_negative = a.axis == SweepAxis::omega_sigma ||
                                  a.axis == SweepAxis::omega_pi || a.axis == SweepAxis::ratio_r;
        if (non_negative && (a.start < 0.0 || a.stop < 0.0)) {
            throw InvalidSpecError(std::string("sweep grid: axis ") + to_string(a.axis) +
                                   " must stay non-negative");
        }
    }
    const Bindings b = locate_axes(grid);
    const FixedParams& f = grid.fixed;

    if (!(std::isfinite(f.delta))) {
        throw InvalidSpecError("sweep grid: delta must be finite");
    }
    if (!(std::isfinite(f.gamma)) || f.gamma <= 0.0) {
        throw InvalidSpecError("sweep grid: gamma must be positive");
    }
    for (const auto& [value, label] :
         {std::pair{f.omega_sigma, "omega_sigma"}, {f.omega_pi, "omega_pi"},
          {f.ratio, "ratio"}}) {
        if (value && (!std::isfinite(*value) || *value < 0.0)) {
            throw InvalidSpecError(std::string("sweep grid: fixed ") + label +
                                   " must be finite and non-negative");
        }
    }
    if (f.phi && !std::isfinite(*f.phi)) {
        throw InvalidSpecError("sweep grid: fixed phi must be finite");
    }

    const bool ws_bound = b.ws_axis != -1 || f.omega_sigma.has_value();
    if ((b.ws_axis != -1) && f.omega_sigma) {
        throw InvalidSpecError("sweep grid: omega_sigma bound twice (axis and fixed)");
    }
    if (!ws_bound) {
        throw InvalidSpecError("sweep grid: omega_sigma is unbound");
    }

    const bool phi_bound = b.phi_axis != -1 || f.phi.has_value();
    if ((b.phi_axis != -1) && f.phi) {
        throw InvalidSpecError("sweep grid: phi bound twice (axis and fixed)");
    }
    if (!phi_bound) {
        throw InvalidSpecError("sweep grid: phi is unbound");
    }

    const bool ratio_bound = b.ratio_axis != -1 || f.ratio.has_value();
    if ((b.ratio_axis != -1) && f.ratio) {
        throw InvalidSpecError("sweep grid: ratio bound twice (axis and fixed)");
    }

    // omega_pi is set directly, derived from the ratio, or derived from a
    // standing-wave position; exactly one of those routes must apply.
    if (b.ky_axis != -1) {
        if (ratio_bound || b.wp_axis != -1) {
            throw InvalidSpecError(
                "sweep grid: a ky axis derives omega_pi and excludes omega_pi/ratio bindings");
        }
        if (!f.omega_pi) {
            throw InvalidSpecError(
                "sweep grid: a ky axis needs fixed omega_pi as the standing-wave peak");
        }
        return;
    }
    if (ratio_bound) {
        if (b.wp_axis != -1 || f.omega_pi) {
            throw InvalidSpecError(
                "sweep grid: ratio derives omega_pi and excludes direct omega_pi bindings");
        }
        return;
    }
    const bool wp_bound = b.wp_axis != -1 || f.omega_pi.has_value();
    if ((b.wp_axis != -1) && f.omega_pi) {
        throw InvalidSpecError("sweep grid: omega_pi bound twice (axis and fixed)");
    }
    if (!wp_bound) {
        throw InvalidSpecError("sweep grid: omega_pi is unbound");
    }
}

namespace {

struct PointSummary {
    double visibility = kNaN;
    double n_e = kNaN;
    bool detectable = false;
    bool degenerate = false;
};

PointSummary evaluate_point(const DriveParams& p, bool use_analytic) {
    PointSummary out;
    if (drives_degenerate(p)) {
        out.degenerate = true;
        return out;
    }
    if (use_analytic) {
        const VisibilityReport rep = visibility_closed_form(p);
        out.visibility = rep.visibility;
        out.n_e = rep.n_e;
        out.detectable = rep.detectable;
        return out;
    }
    SteadyStateSolution sol;
    try {
        sol = numeric_steady_state(p);
    } catch (const DegenerateSteadyStateError&) {
        out.degenerate = true;
        return out;
    }
    out.n_e = sol.n_e;
    const double coherent = std::norm(sol.rho_sigma) + std::norm(sol.rho_pi);
    if (sol.n_e < 1e-12) {
        // Dark point: the fringe ratio is 0/0, but on resonance the limit
        // is the closed-form value.
        out.visibility = p.delta == 0.0 ? visibility_closed_form(p).visibility : kNaN;
    } else {
        out.visibility = 0.5 * coherent / sol.n_e;
    }
    out.detectable = sol.n_e >= kDetectabilityFloor;
    return out;
}

}  // namespace

SweepTable run_sweep(const SweepGrid& grid, Engine engine) {
    validate(grid);
    if (engine == Engine::analytic && grid.fixed.delta != 0.0) {
        throw UnsupportedRegimeError(
            "run_sweep: analytic engine is resonance-only; use numeric or auto for delta != 0");
    }
    const bool use_analytic =
        engine == Engine::analytic || (engine == Engine::automatic && grid.fixed.delta == 0.0);

    const Bindings b = locate_axes(grid);
    const FixedParams& f = grid.fixed;

    SweepTable table;
    table.axis_names.reserve(grid.axes.size());
    std::size_t total = 1;
    for (const AxisSpec& a : grid.axes) {
        table.axis_names.emplace_back(to_string(a.axis));
        total *= static_cast<std::size_t>(a.count);
    }
    table.rows.reserve(total);

    std::vector<int> index(grid.axes.size(), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        SweepRow row;
        row.axis_values.resize(grid.axes.size());
        for (std::size_t k = 0; k < grid.axes.size(); ++k) {
            row.axis_values[k] = axis_value(grid.axes[k], index[k]);
        }

        const auto at = [&](int axis_index) {
            return row.axis_values[static_cast<std::size_t>(axis_index)];
        };
        const double ws = b.ws_axis != -1 ? at(b.ws_axis) : *f.omega_sigma;
        const double ph = b.phi_axis != -1 ? at(b.phi_axis) : *f.phi;
        double wp = 0.0;
        if (b.ky_axis != -1) {
            wp = std::abs(*f.omega_pi * std::sin(at(b.ky_axis)));
        } else if (b.ratio_axis != -1) {
            wp = at(b.ratio_axis) * ws;
        } else if (f.ratio) {
            wp = *f.ratio * ws;
        } else {
            wp = b.wp_axis != -1 ? at(b.wp_axis) : *f.omega_pi;
        }

        row.params = DriveParams{ws, wp, ph, f.delta, f.gamma};
        const PointSummary s = evaluate_point(row.params, use_analytic);
        row.visibility = s.visibility;
        row.n_e = s.n_e;
        row.detectable = s.detectable;
        row.degenerate = s.degenerate;
        table.rows.push_back(std::move(row));

        // Odometer: last axis fastest, so rows run lexicographically.
        for (std::size_t k = grid.axes.size(); k-- > 0;) {
            if (++index[k] < grid.axes[k].count) {
                break;
            }
            index[k] = 0;
        }
    }
    return table;
}

StandingWaveSpec StandingWaveSpec::uniform(double omega, int points, double start, double stop) {
    StandingWaveSpec spec;
    spec.omega = omega;
    spec.ky_grid = linspace(start, stop, points);
    return spec;
}

void validate(const StandingWaveSpec& spec) {
    if (!(std::isfinite(spec.omega)) || spec.omega <= 0.0) {
        throw InvalidSpecError("standing wave: peak Rabi frequency must be positive");
    }
    if (spec.ky_grid.empty()) {
        throw InvalidSpecError("standing wave: ky grid is empty");
    }
    for (double ky : spec.ky_grid) {
        if (!std::isfinite(ky)) {
            throw InvalidSpecError("standing wave: ky grid contains non-finite values");
        }
    }
    if (spec.omega_sigma && (!std::isfinite(*spec.omega_sigma) || *spec.omega_sigma < 0.0)) {
        throw InvalidSpecError("standing wave: omega_sigma must be finite and non-negative");
    }
    if (!std::isfinite(spec.phi)) {
        throw InvalidSpecError("standing wave: phi must be finite");
    }
}

std::vector<StandingWaveRow> standing_wave_scan(const StandingWaveSpec& spec) {
    validate(spec);
    const double ws = spec.omega_sigma.value_or(spec.omega);
    std::vector<StandingWaveRow> rows;
    rows.reserve(spec.ky_grid.size());
    for (double ky : spec.ky_grid) {
        StandingWaveRow row;
        row.ky = ky;
        row.r = std::sin(ky);
        const DriveParams p{ws, std::abs(spec.omega * row.r), spec.phi, 0.0, 1.0};
        const PointSummary s = evaluate_point(p, /*use_analytic=*/true);
        row.visibility = s.visibility;
        row.n_e = s.n_e;
        row.detectable = s.detectable;
        row.degenerate = s.degenerate;
        rows.push_back(row);
    }
    return rows;
}

double peak_width(const std::vector<double>& x, const std::vector<double>& y,
                  double threshold_fraction) {
    if (x.size() != y.size()) {
        throw InvalidInputError("peak_width: x and y sizes differ");
    }
    if (x.size() < 3) {
        throw InvalidInputError("peak_width: need at least three samples");
    }
    if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0)) {
        throw InvalidInputError("peak_width: threshold fraction must lie in (0, 1)");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(std::isfinite(x[i]) && std::isfinite(y[i]))) {
            throw InvalidInputError("peak_width: scan contains non-finite values");
        }
        if (i > 0 && !(x[i] > x[i - 1])) {
            throw InvalidInputError("peak_width: x must be strictly increasing");
        }
    }

    std::size_t peak = 0;
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (y[i] > y[peak]) {
            peak = i;
        }
    }
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i != peak && y[i] == y[peak]) {
            throw AmbiguousPeakError("peak_width: multiple equal maxima");
        }
    }
    if (peak == 0 || peak == y.size() - 1) {
        throw AmbiguousPeakError("peak_width: peak sits on the grid edge");
    }
    if (!(y[peak] > 0.0)) {
        throw AmbiguousPeakError("peak_width: peak value is not positive");
    }

    const double threshold = threshold_fraction * y[peak];
    const auto interpolate = [&](std::size_t below, std::size_t above) {
        const double t = (threshold - y[below]) / (y[above] - y[below]);
        return x[below] + t * (x[above] - x[below]);
    };

    double left = kNaN;
    for (std::size_t i = peak; i-- > 0;) {
        if (y[i] < threshold) {
            left = interpolate(i, i + 1);
            break;
        }
    }
    double right = kNaN;
    for (std::size_t i = peak + 1; i < y.size(); ++i) {
        if (y[i] < threshold) {
            right = interpolate(i, i - 1);
            break;
        }
    }
    if (!std::isfinite(left) || !std::isfinite(right)) {
        throw AmbiguousPeakError("peak_width: threshold never crossed inside the scan");
    }
    return right - left;
}

double peak_width(const SweepTable& table, double threshold_fraction) {
    if (table.axis_names.size() != 1) {
        throw InvalidInputError("peak_width: need a single-axis sweep");
    }
    std::vector<double> x;
    std::vector<double> y;
    x.reserve(table.rows.size());
    y.reserve(table.rows.size());
    for (const SweepRow& row : table.rows) {
        x.push_back(row.axis_values[0]);
        y.push_back(row.visibility);
    }
    return peak_width(x, y, threshold_fraction);
}

std::optional<Preset> preset_by_name(const std::string& name,
                                     std::optional<double> omega_override) {
    const auto sweep_preset = [&](SweepGrid grid) {
        return Preset{name, std::move(grid)};
    };
    if (name == "fig2a" || name == "fig2b") {
        SweepGrid g;
        g.axes = {{SweepAxis::omega_sigma, 0.0, 10.0, 201},
                  {SweepAxis::omega_pi, 0.0, 10.0, 201}};
        g.fixed.phi = name == "fig2a" ? 0.0 : 0.5 * kPi;
        return sweep_preset(std::move(g));
    }
    if (name == "fig2c") {
        SweepGrid g;
        g.axes = {{SweepAxis::omega_sigma, 0.0, 10.0, 201}, {SweepAxis::phi, 0.0, kPi, 361}};
        g.fixed.ratio = 1.0;
        return sweep_preset(std::move(g));
    }
    if (name == "fig2d") {
        SweepGrid g;
        g.axes = {{SweepAxis::phi, 0.0, kPi, 721}};
        g.fixed.omega_sigma = omega_override.value_or(10.0);
        g.fixed.ratio = 1.0;
        return sweep_preset(std::move(g));
    }
    if (name == "fig3a" || name == "fig3b") {
        SweepGrid g;
        g.axes = {{SweepAxis::ratio_r, 0.5, 1.5, 1001}};
        g.fixed.omega_sigma = omega_override.value_or(name == "fig3a" ? 5.0 : 10.0);
        g.fixed.phi = 0.5 * kPi;
        return sweep_preset(std::move(g));
    }
    if (name == "fig3c" || name == "fig3d") {
        const double omega = omega_override.value_or(name == "fig3c" ? 5.0 : 10.0);
        return Preset{name, StandingWaveSpec::uniform(omega, 1000)};
    }
    return std::nullopt;
}

std::vector<std::string> preset_names() {
    return {"fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "fig3c", "fig3d"};
}

}  // namespace qfringe
