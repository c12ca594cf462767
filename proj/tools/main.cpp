#include <algorithm>
#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfringe/run.hpp"

namespace {

// Staging area for flag values; RunConfig optionals are filled only for
// flags the user actually passed, so config-file values can slot in
// underneath.
struct FlagValues {
    double omega_sigma = 0.0;
    double omega_pi = 0.0;
    double phi = 0.0;
    double delta = 0.0;
    double omega = 0.0;
    double ratio = 0.0;
    std::string engine = "auto";
    std::string format = "csv";
    std::string preset;
    std::string out;
    std::string config_path;
    std::string mutation;
    std::vector<std::string> axes;
    int points = 1000;
    int samples = 200;
    std::uint64_t seed = 20260817ULL;
    bool plot = false;
};

struct SubcommandBinding {
    CLI::App* app = nullptr;
    qfringe::Command command = qfringe::Command::steady;
    std::map<std::string, CLI::Option*> options;
};

class CommandBuilder {
public:
    CommandBuilder(CLI::App& app, FlagValues& values) : app_(app), values_(values) {
        bindings_.reserve(8);  // add() hands out references into this vector
    }

    SubcommandBinding& add(const std::string& name, qfringe::Command command,
                           const std::string& description) {
        bindings_.push_back({app_.add_subcommand(name, description), command, {}});
        return bindings_.back();
    }

    void drive_flags(SubcommandBinding& b) {
        b.options["omega_sigma"] =
            b.app->add_option("--omega-sigma", values_.omega_sigma, "sigma-drive Rabi frequency");
        b.options["omega_pi"] =
            b.app->add_option("--omega-pi", values_.omega_pi, "pi-drive Rabi frequency");
        b.options["phi"] = b.app->add_option("--phi", values_.phi, "relative drive phase (rad)");
        b.options["delta"] = b.app->add_option("--delta", values_.delta, "detuning");
    }

    void engine_flag(SubcommandBinding& b) {
        b.options["engine"] = b.app->add_option("--engine", values_.engine,
                                                "solver: auto | analytic | numeric");
    }

    void output_flags(SubcommandBinding& b) {
        b.options["out"] = b.app->add_option("--out", values_.out, "output file (default stdout)");
        b.options["format"] = b.app->add_option("--format", values_.format, "csv | json");
        b.options["config"] =
            b.app->add_option("--config", values_.config_path, "key = value config file");
    }

    std::vector<SubcommandBinding>& bindings() { return bindings_; }

private:
    CLI::App& app_;
    FlagValues& values_;
    std::vector<SubcommandBinding> bindings_;
};

void fill_from_flags(qfringe::RunConfig& rc, const FlagValues& v, const SubcommandBinding& b) {
    const auto set = [&](const char* key) {
        const auto it = b.options.find(key);
        return it != b.options.end() && it->second->count() > 0;
    };

    if (set("omega_sigma")) rc.omega_sigma = v.omega_sigma;
    if (set("omega_pi")) rc.omega_pi = v.omega_pi;
    if (set("phi")) rc.phi = v.phi;
    if (set("delta")) rc.delta = v.delta;
    if (set("omega")) rc.omega = v.omega;
    if (set("ratio")) rc.ratio = v.ratio;
    if (set("preset")) rc.preset = v.preset;
    if (set("out")) rc.out_path = v.out;
    if (set("plot")) rc.emit_plot_script = v.plot;
    if (set("points")) rc.points = v.points;
    if (set("samples")) rc.samples = v.samples;
    if (set("seed")) rc.seed = v.seed;
    if (set("mutate")) rc.mutation = v.mutation;
    if (set("axis")) {
        rc.axis_specs.insert(rc.axis_specs.end(), v.axes.begin(), v.axes.end());
    }
    if (set("engine")) {
        const auto engine = qfringe::parse_engine(v.engine);
        if (!engine) {
            throw qfringe::InvalidSpecError("unknown engine '" + v.engine + "'");
        }
        rc.engine = *engine;
    }
    if (set("format")) {
        if (v.format == "csv") {
            rc.format = qfringe::OutputFormat::csv;
        } else if (v.format == "json") {
            rc.format = qfringe::OutputFormat::json;
        } else {
            throw qfringe::InvalidSpecError("unknown format '" + v.format + "'");
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady states and two-atom fringe visibility for a driven four-level atom"};
    app.set_version_flag("--version", qfringe::kToolVersion);
    app.require_subcommand(1);

    FlagValues values;
    CommandBuilder builder(app, values);

    {
        auto& b = builder.add("steady", qfringe::Command::steady,
                              "solve the steady-state density matrix");
        builder.drive_flags(b);
        builder.engine_flag(b);
        builder.output_flags(b);
    }
    {
        auto& b = builder.add("visibility", qfringe::Command::visibility,
                              "fringe visibility and excited population at one drive point");
        builder.drive_flags(b);
        builder.engine_flag(b);
        builder.output_flags(b);
    }
    {
        auto& b = builder.add("pattern", qfringe::Command::pattern,
                              "far-field intensity over one fringe period");
        builder.drive_flags(b);
        builder.engine_flag(b);
        builder.output_flags(b);
        b.options["points"] =
            b.app->add_option("--points", values.points, "number of phase samples");
    }
    {
        auto& b = builder.add("sweep", qfringe::Command::sweep,
                              "tabulate visibility over a parameter grid");
        builder.drive_flags(b);
        builder.engine_flag(b);
        builder.output_flags(b);
        b.options["preset"] =
            b.app->add_option("--preset", values.preset, "named grid (fig2a..fig3d)");
        b.options["omega"] =
            b.app->add_option("--omega", values.omega, "preset drive strength override");
        b.options["ratio"] =
            b.app->add_option("--ratio", values.ratio, "fixed omega_pi / omega_sigma");
        b.options["axis"] = b.app->add_option("--axis", values.axes,
                                              "sweep axis as name:start:stop:count (repeatable)");
        b.options["plot"] = b.app->add_flag("--plot", values.plot,
                                            "write a gnuplot companion script next to --out");
    }
    {
        auto& b = builder.add("standing-wave", qfringe::Command::standing_wave,
                              "visibility along a standing pi-drive");
        builder.output_flags(b);
        b.options["omega"] =
            b.app->add_option("--omega", values.omega, "standing-wave peak Rabi frequency");
        b.options["omega_sigma"] = b.app->add_option("--omega-sigma", values.omega_sigma,
                                                     "traveling sigma-drive (default: --omega)");
        b.options["phi"] =
            b.app->add_option("--phi", values.phi, "relative drive phase (default pi/2)");
        b.options["points"] = b.app->add_option("--points", values.points, "ky grid size");
        b.options["plot"] = b.app->add_flag("--plot", values.plot,
                                            "write a gnuplot companion script next to --out");
    }
    {
        auto& b = builder.add("validate", qfringe::Command::validate,
                              "randomized self-test of the solver stack");
        builder.output_flags(b);
        b.options["samples"] =
            b.app->add_option("--samples", values.samples, "random draws per family");
        b.options["seed"] = b.app->add_option("--seed", values.seed, "RNG seed");
        b.options["mutate"] = b.app->add_option("--mutate", values.mutation,
                                                "fault injection for self-test development");
        b.options["mutate"]->group("");  // hidden
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    SubcommandBinding* active = nullptr;
    for (auto& b : builder.bindings()) {
        if (b.app->parsed()) {
            active = &b;
            break;
        }
    }
    if (active == nullptr) {
        std::cerr << "error: no command given\n";
        return 1;
    }

    qfringe::RunConfig rc;
    rc.command = active->command;
    try {
        const auto config_opt = active->options.find("config");
        if (config_opt != active->options.end() && config_opt->second->count() > 0) {
            const auto flag_set = [&](std::string key) {
                std::replace(key.begin(), key.end(), '-', '_');
                const auto it = active->options.find(key);
                return it != active->options.end() && it->second->count() > 0;
            };
            for (const auto& [key, value] : qfringe::parse_config_file(values.config_path)) {
                if (flag_set(key)) {
                    continue;  // command-line flags override file values
                }
                qfringe::apply_config_entry(rc, key, value);
            }
        }
        fill_from_flags(rc, values, *active);
    } catch (const qfringe::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    return qfringe::run(rc, std::cout, std::cerr);
}
