#include "qfringe/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "qfringe/detail/rng.hpp"
#include "qfringe/dynamics.hpp"
#include "qfringe/steady_state.hpp"

namespace qfringe {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void deliver(const RunConfig& c, std::ostream& out, const std::string& content) {
    if (c.out_path) {
        write_text_atomic(*c.out_path, content);
    } else {
        out << content;
    }
}

// Fail fast on unwritable destinations, before any computation runs.
void probe_writable(const std::string& path) {
    const std::string probe = path + ".probe";
    {
        std::ofstream f(probe, std::ios::binary | std::ios::app);
        if (!f) {
            throw InvalidSpecError("output path is not writable: " + path);
        }
    }
    std::remove(probe.c_str());
}

DriveParams drive_from(const RunConfig& c) {
    if (!c.omega_sigma || !c.omega_pi) {
        throw InvalidSpecError("both --omega-sigma and --omega-pi are required");
    }
    DriveParams p;
    p.omega_sigma = *c.omega_sigma;
    p.omega_pi = *c.omega_pi;
    p.phi = c.phi.value_or(0.0);
    p.delta = c.delta.value_or(0.0);
    validate(p);
    return p;
}

bool route_analytic(const DriveParams& p, Engine engine) {
    return engine == Engine::analytic || (engine == Engine::automatic && p.delta == 0.0);
}

SteadyStateSolution solve_routed(const DriveParams& p, Engine engine) {
    return route_analytic(p, engine) ? analytic_steady_state(p) : numeric_steady_state(p);
}

VisibilityReport report_from_solution(const DriveParams& p, const SteadyStateSolution& s) {
    VisibilityReport r;
    r.n_e = s.n_e;
    const double coherent = std::norm(s.rho_sigma) + std::norm(s.rho_pi);
    if (s.n_e < 1e-12) {
        r.visibility = p.delta == 0.0 ? visibility_closed_form(p).visibility : kNaN;
    } else {
        r.visibility = 0.5 * coherent / s.n_e;
    }
    r.sum_rule_residual = std::abs(r.visibility + r.n_e - 0.5);
    r.detectable = s.n_e >= kDetectabilityFloor;
    r.provenance = s.provenance;
    return r;
}

OutputMeta meta_for(const RunConfig& c) { return OutputMeta{to_string(c.engine), c.seed}; }

int cmd_steady(const RunConfig& c, std::ostream& out) {
    const DriveParams p = drive_from(c);
    const SteadyStateSolution s = solve_routed(p, c.engine);
    deliver(c, out,
            c.format == OutputFormat::csv ? csv_from_steady(p, s)
                                          : json_from_steady(p, s, meta_for(c)));
    return 0;
}

int cmd_visibility(const RunConfig& c, std::ostream& out) {
    const DriveParams p = drive_from(c);
    VisibilityReport r;
    if (route_analytic(p, c.engine)) {
        r = visibility_closed_form(p);
    } else {
        r = report_from_solution(p, numeric_steady_state(p));
    }
    deliver(c, out,
            c.format == OutputFormat::csv ? csv_from_visibility(p, r)
                                          : json_from_visibility(p, r, meta_for(c)));
    return 0;
}

int cmd_pattern(const RunConfig& c, std::ostream& out) {
    const DriveParams p = drive_from(c);
    if (c.points < 2) {
        throw InvalidSpecError("pattern needs at least two phase points");
    }
    const SteadyStateSolution s = solve_routed(p, c.engine);
    const int n = c.points;
    std::vector<double> deltas(static_cast<std::size_t>(n));
    std::vector<double> intensities(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double delta = kTwoPi * (static_cast<double>(j) / static_cast<double>(n));
        deltas[static_cast<std::size_t>(j)] = delta;
        intensities[static_cast<std::size_t>(j)] = intensity_at(s, delta);
    }
    deliver(c, out,
            c.format == OutputFormat::csv
                ? csv_from_pattern(deltas, intensities)
                : json_from_pattern(p, deltas, intensities, meta_for(c)));
    return 0;
}

AxisSpec parse_axis_spec(const std::string& text) {
    std::vector<std::string> parts;
    std::string token;
    std::istringstream stream(text);
    while (std::getline(stream, token, ':')) {
        parts.push_back(token);
    }
    if (parts.size() != 4) {
        throw InvalidSpecError("axis spec must be name:start:stop:count, got '" + text + "'");
    }
    const auto axis = parse_axis(parts[0]);
    if (!axis) {
        throw InvalidSpecError("unknown sweep axis '" + parts[0] + "'");
    }
    AxisSpec a;
    a.axis = *axis;
    try {
        std::size_t used = 0;
        a.start = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
        a.stop = std::stod(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
        a.count = std::stoi(parts[3], &used);
        if (used != parts[3].size()) throw std::invalid_argument(parts[3]);
    } catch (const std::logic_error&) {
        throw InvalidSpecError("cannot parse axis spec '" + text + "'");
    }
    return a;
}

void emit_plot_script(const RunConfig& c, int axis_count,
                      const std::vector<std::string>& column_names) {
    if (!c.out_path || c.format != OutputFormat::csv) {
        throw InvalidSpecError("--plot needs --out with csv format");
    }
    if (axis_count > 2) {
        throw InvalidSpecError("--plot supports one or two sweep axes");
    }
    const std::filesystem::path csv_path(*c.out_path);
    std::filesystem::path script_path = csv_path;
    script_path.replace_extension(".gp");
    const std::string script =
        gnuplot_script_for_csv(csv_path.filename().string(), axis_count, column_names);
    write_text_atomic(script_path.string(), script);
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
    if (c.preset && !c.axis_specs.empty()) {
        throw InvalidSpecError("--preset and --axis are mutually exclusive");
    }

    if (c.preset) {
        const auto preset = preset_by_name(*c.preset, c.omega);
        if (!preset) {
            throw InvalidSpecError("unknown preset '" + *c.preset + "'");
        }
        if (const auto* spec = std::get_if<StandingWaveSpec>(&preset->config)) {
            const auto rows = standing_wave_scan(*spec);
            if (c.emit_plot_script) {
                emit_plot_script(c, 1, {"ky", "r", "V"});
            }
            deliver(c, out,
                    c.format == OutputFormat::csv
                        ? csv_from_standing_wave(rows)
                        : json_from_standing_wave(*spec, rows, meta_for(c)));
            return 0;
        }
        const auto& grid = std::get<SweepGrid>(preset->config);
        const SweepTable table = run_sweep(grid, c.engine);
        if (c.emit_plot_script) {
            auto names = table.axis_names;
            names.emplace_back("V");
            emit_plot_script(c, static_cast<int>(table.axis_names.size()), names);
        }
        deliver(c, out,
                c.format == OutputFormat::csv ? csv_from_sweep(table)
                                              : json_from_sweep(table, meta_for(c)));
        return 0;
    }

    if (c.axis_specs.empty()) {
        throw InvalidSpecError("sweep needs --preset or at least one --axis");
    }
    SweepGrid grid;
    grid.axes.reserve(c.axis_specs.size());
    for (const std::string& text : c.axis_specs) {
        grid.axes.push_back(parse_axis_spec(text));
    }
    grid.fixed.omega_sigma = c.omega_sigma;
    grid.fixed.omega_pi = c.omega_pi;
    grid.fixed.phi = c.phi;
    grid.fixed.ratio = c.ratio;
    grid.fixed.delta = c.delta.value_or(0.0);

    const SweepTable table = run_sweep(grid, c.engine);
    if (c.emit_plot_script) {
        auto names = table.axis_names;
        names.emplace_back("V");
        emit_plot_script(c, static_cast<int>(table.axis_names.size()), names);
    }
    deliver(c, out,
            c.format == OutputFormat::csv ? csv_from_sweep(table)
                                          : json_from_sweep(table, meta_for(c)));
    return 0;
}

int cmd_standing_wave(const RunConfig& c, std::ostream& out) {
    if (c.points < 2) {
        throw InvalidSpecError("standing-wave needs at least two grid points");
    }
    StandingWaveSpec spec = StandingWaveSpec::uniform(c.omega.value_or(10.0), c.points);
    spec.omega_sigma = c.omega_sigma;
    if (c.phi) {
        spec.phi = *c.phi;
    }
    const auto rows = standing_wave_scan(spec);
    if (c.emit_plot_script) {
        emit_plot_script(c, 1, {"ky", "r", "V"});
    }
    deliver(c, out,
            c.format == OutputFormat::csv ? csv_from_standing_wave(rows)
                                          : json_from_standing_wave(spec, rows, meta_for(c)));
    return 0;
}

// ---- self-test ----------------------------------------------------------

struct RawSummaries {
    double n_e;
    Complex rho_sigma;
    Complex rho_pi;
};

RawSummaries summarize_raw(const Matrix4c& rho) {
    return {(rho(2, 2) + rho(3, 3)).real(), rho(2, 1) + rho(3, 0), rho(3, 1) - rho(2, 0)};
}

struct FamilyResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::string describe(const DriveParams& p) {
    return "omega_sigma=" + format_number(p.omega_sigma) +
           " omega_pi=" + format_number(p.omega_pi) + " phi=" + format_number(p.phi);
}

FamilyResult family_closed_vs_nullspace(detail::Rng& rng, int samples, bool mutate) {
    double worst = 0.0;
    DriveParams worst_p;
    for (int i = 0; i < samples; ++i) {
        DriveParams p;
        p.omega_sigma = rng.uniform(0.1, 15.0);
        p.omega_pi = rng.uniform(0.1, 15.0);
        p.phi = rng.uniform(0.0, kTwoPi);
        const SteadyStateSolution a = analytic_steady_state(p);

        Matrix16c generator;
        if (mutate) {
            Matrix4c h = hamiltonian_matrix(p.omega_sigma, p.omega_pi, p.phi, p.delta);
            h(0, 3) = -h(0, 3);
            h(3, 0) = -h(3, 0);
            generator = liouvillian_from(h, p.gamma);
        } else {
            generator = liouvillian_matrix(p.omega_sigma, p.omega_pi, p.phi, p.delta, p.gamma);
        }
        const RawSummaries n = summarize_raw(solve_steady_from_superoperator(generator));

        const double dev = std::max({std::abs(a.n_e - n.n_e), std::abs(a.rho_sigma - n.rho_sigma),
                                     std::abs(a.rho_pi - n.rho_pi)});
        if (dev > worst) {
            worst = dev;
            worst_p = p;
        }
    }
    FamilyResult r;
    r.name = "closed-form vs null-space";
    r.pass = worst < 1e-8;
    r.detail = "max deviation " + format_number(worst);
    if (!r.pass) {
        r.detail += " at " + describe(worst_p);
    }
    return r;
}

FamilyResult family_sum_rule(detail::Rng& rng, int samples) {
    double worst_analytic = 0.0;
    double worst_numeric = 0.0;
    DriveParams worst_p;
    for (int i = 0; i < samples; ++i) {
        DriveParams p;
        p.omega_sigma = rng.uniform(0.1, 15.0);
        p.omega_pi = rng.uniform(0.1, 15.0);
        p.phi = rng.uniform(0.0, kTwoPi);

        const double res_a = sum_rule_residual(p);
        const SteadyStateSolution s = numeric_steady_state(p);
        const double coherent = std::norm(s.rho_sigma) + std::norm(s.rho_pi);
        const double res_n = std::abs(0.5 * coherent / s.n_e + s.n_e - 0.5);
        // Score residuals relative to their own tolerances so the reported
        // worst case is the one closest to (or past) its limit.
        const double score = std::max(res_a / 1e-12, res_n / 1e-6);
        if (score > std::max(worst_analytic / 1e-12, worst_numeric / 1e-6)) {
            worst_p = p;
        }
        worst_analytic = std::max(worst_analytic, res_a);
        worst_numeric = std::max(worst_numeric, res_n);
    }
    FamilyResult r;
    r.name = "visibility sum rule";
    r.pass = worst_analytic < 1e-12 && worst_numeric < 1e-6;
    r.detail = "max residual " + format_number(worst_analytic) + " (closed form), " +
               format_number(worst_numeric) + " (null-space)";
    if (!r.pass) {
        r.detail += " at " + describe(worst_p);
    }
    return r;
}

FamilyResult family_symmetries(detail::Rng& rng, int samples) {
    double worst = 0.0;
    DriveParams worst_p;
    const auto observables = [](double ws, double wp, double phi) {
        const RawSummaries s =
            summarize_raw(solve_steady_from_superoperator(liouvillian_matrix(ws, wp, phi, 0.0, 1.0)));
        const double coherent = std::norm(s.rho_sigma) + std::norm(s.rho_pi);
        return std::pair<double, double>{s.n_e, coherent};
    };
    for (int i = 0; i < samples; ++i) {
        DriveParams p;
        p.omega_sigma = rng.uniform(0.1, 15.0);
        p.omega_pi = rng.uniform(0.1, 15.0);
        p.phi = rng.uniform(0.0, kTwoPi);

        const auto base = observables(p.omega_sigma, p.omega_pi, p.phi);
        const std::pair<double, double> variants[] = {
            observables(p.omega_pi, p.omega_sigma, p.phi),
            observables(p.omega_sigma, p.omega_pi, -p.phi),
            observables(p.omega_sigma, p.omega_pi, p.phi + kPi),
            observables(p.omega_sigma, -p.omega_pi, p.phi),
        };
        for (const auto& v : variants) {
            const double dev =
                std::max(std::abs(v.first - base.first), std::abs(v.second - base.second));
            if (dev > worst) {
                worst = dev;
                worst_p = p;
            }
        }
    }
    FamilyResult r;
    r.name = "drive/phase symmetries";
    r.pass = worst < 1e-9;
    r.detail = "max deviation " + format_number(worst);
    if (!r.pass) {
        r.detail += " at " + describe(worst_p);
    }
    return r;
}

FamilyResult family_integrator_order(const DriveParams& p) {
    const DensityMatrix rho0 = DensityMatrix::pure(0);
    const auto end_state = [&](double step) {
        IntegrationSpec spec;
        spec.step = step;
        spec.t_max = 5.0;
        return integrate(rho0, p, spec, 1 << 20).back().state.matrix();
    };
    const Matrix4c reference = end_state(0.00125);
    const auto error_at = [&](double step) {
        return (end_state(step) - reference).cwiseAbs().maxCoeff();
    };
    const double coarse = error_at(0.04);
    const double fine = error_at(0.02);
    const double factor = coarse / fine;

    FamilyResult r;
    r.name = "integrator order";
    r.pass = factor >= 8.0 && factor <= 32.0;
    r.detail = "halving the step shrinks the error by " + format_number(factor) + "x at " +
               describe(p);
    return r;
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
    if (c.samples < 1) {
        throw InvalidSpecError("validate needs --samples >= 1");
    }
    bool mutate = false;
    if (c.mutation) {
        if (*c.mutation == "h14-sign") {
            mutate = true;
        } else {
            throw InvalidSpecError("unknown mutation '" + *c.mutation + "'");
        }
    }

    detail::Rng rng(c.seed);
    std::vector<FamilyResult> results;
    results.push_back(family_closed_vs_nullspace(rng, c.samples, mutate));
    results.push_back(family_sum_rule(rng, c.samples));
    results.push_back(family_symmetries(rng, c.samples));
    results.push_back(family_integrator_order(DriveParams{1.2, 0.8, 0.7, 0.5, 1.0}));

    std::ostringstream report;
    report << "self-test: " << c.samples << " samples, seed " << c.seed << "\n";
    int passed = 0;
    for (const FamilyResult& r : results) {
        report << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
        passed += r.pass ? 1 : 0;
    }
    const bool all = passed == static_cast<int>(results.size());
    report << (all ? "self-test passed" : "self-test FAILED") << " (" << passed << "/"
           << results.size() << " families)\n";

    deliver(c, out, report.str());
    return all ? 0 : 3;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.out_path) {
            probe_writable(*config.out_path);
        }
        switch (config.command) {
            case Command::steady: return cmd_steady(config, out);
            case Command::visibility: return cmd_visibility(config, out);
            case Command::pattern: return cmd_pattern(config, out);
            case Command::sweep: return cmd_sweep(config, out);
            case Command::standing_wave: return cmd_standing_wave(config, out);
            case Command::validate: return cmd_validate(config, out);
        }
        err << "error: unknown command\n";
        return 1;
    } catch (const InvalidInputError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidSpecError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const UnsupportedRegimeError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const DegenerateSteadyStateError& e) {
        err << "degenerate: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateInputError& e) {
        err << "degenerate: " << e.what() << "\n";
        return 2;
    } catch (const NonConvergenceError& e) {
        err << "degenerate: " << e.what() << "\n";
        return 2;
    } catch (const NumericalInstabilityError& e) {
        err << "degenerate: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidSpecError("cannot open config file: " + path);
    }
    const auto trim = [](std::string s) {
        const auto begin = s.find_first_not_of(" \t\r");
        const auto end = s.find_last_not_of(" \t\r");
        return begin == std::string::npos ? std::string() : s.substr(begin, end - begin + 1);
    };
    std::map<std::string, std::string> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string text = trim(line);
        if (text.empty()) {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw InvalidSpecError("config line " + std::to_string(line_no) +
                                   " is not key = value: '" + text + "'");
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) {
            throw InvalidSpecError("config line " + std::to_string(line_no) + " has an empty key");
        }
        entries[key] = value;
    }
    return entries;
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::logic_error&) {
        throw InvalidSpecError("config: cannot parse " + key + " = '" + value + "' as a number");
    }
}

long long parse_integer(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::logic_error&) {
        throw InvalidSpecError("config: cannot parse " + key + " = '" + value +
                               "' as an integer");
    }
}

bool parse_flag(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
    if (value == "0" || value == "false" || value == "no" || value == "off") return false;
    throw InvalidSpecError("config: cannot parse " + key + " = '" + value + "' as a boolean");
}

}  // namespace

void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value) {
    std::string k = key;
    std::replace(k.begin(), k.end(), '-', '_');

    if (k == "omega_sigma") {
        config.omega_sigma = parse_double(k, value);
    } else if (k == "omega_pi") {
        config.omega_pi = parse_double(k, value);
    } else if (k == "phi") {
        config.phi = parse_double(k, value);
    } else if (k == "delta") {
        config.delta = parse_double(k, value);
    } else if (k == "omega") {
        config.omega = parse_double(k, value);
    } else if (k == "ratio") {
        config.ratio = parse_double(k, value);
    } else if (k == "engine") {
        const auto engine = parse_engine(value);
        if (!engine) {
            throw InvalidSpecError("config: unknown engine '" + value + "'");
        }
        config.engine = *engine;
    } else if (k == "format") {
        if (value == "csv") {
            config.format = OutputFormat::csv;
        } else if (value == "json") {
            config.format = OutputFormat::json;
        } else {
            throw InvalidSpecError("config: unknown format '" + value + "'");
        }
    } else if (k == "preset") {
        config.preset = value;
    } else if (k == "out") {
        config.out_path = value;
    } else if (k == "plot") {
        config.emit_plot_script = parse_flag(k, value);
    } else if (k == "axis") {
        std::istringstream stream(value);
        std::string token;
        while (std::getline(stream, token, ';')) {
            const auto begin = token.find_first_not_of(" \t");
            const auto end = token.find_last_not_of(" \t");
            if (begin == std::string::npos) {
                continue;
            }
            config.axis_specs.push_back(token.substr(begin, end - begin + 1));
        }
    } else if (k == "points") {
        config.points = static_cast<int>(parse_integer(k, value));
    } else if (k == "samples") {
        config.samples = static_cast<int>(parse_integer(k, value));
    } else if (k == "seed") {
        config.seed = static_cast<std::uint64_t>(parse_integer(k, value));
    } else {
        throw InvalidSpecError("config: unknown key '" + key + "'");
    }
}

}  // namespace qfringe
