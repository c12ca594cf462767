#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfringe/output.hpp"

namespace qfringe {

enum class Command { steady, visibility, pattern, sweep, standing_wave, validate };
enum class OutputFormat { csv, json };

// Fully resolved invocation.  Optionals left empty fall back to the
// per-command defaults documented in the README.
struct RunConfig {
    Command command = Command::steady;
    Engine engine = Engine::automatic;
    OutputFormat format = OutputFormat::csv;

    std::optional<double> omega_sigma;
    std::optional<double> omega_pi;
    std::optional<double> phi;
    std::optional<double> delta;
    std::optional<double> omega;   // preset / standing-wave drive strength
    std::optional<double> ratio;   // fixed omega_pi / omega_sigma for sweeps

    std::optional<std::string> preset;
    std::vector<std::string> axis_specs;  // "name:start:stop:count"

    std::optional<std::string> out_path;  // default: stdout
    bool emit_plot_script = false;        // write <out stem>.gp beside the CSV

    int points = 1000;       // pattern delta grid / standing-wave ky grid
    int samples = 200;       // validate: random sample count
    std::uint64_t seed = 20260817ULL;  // validate: RNG seed

    // validate self-test fault injection ("h14-sign"); empty in normal use.
    std::optional<std::string> mutation;
};

// Exit codes: 0 success, 1 config error, 2 degenerate physics,
// 3 validation failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Flat "key = value" file with '#' comments and blank lines.
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Applies one key from a config file; throws InvalidSpecError on unknown
// keys or unparsable values.  Callers skip keys already set by flags.
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);

}  // namespace qfringe
