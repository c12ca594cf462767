#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qfringe/scan.hpp"

namespace qfringe {

inline constexpr const char* kToolVersion = "0.1.0";

// Context recorded alongside serialized results.
struct OutputMeta {
    std::string engine = "auto";
    std::uint64_t seed = 0;
};

// %.12g rendering: 12 significant digits, '.' decimal separator, no locale.
std::string format_number(double v);
std::string format_bool(bool b);  // "1" / "0"

// CSV: UTF-8, LF line endings, header row, 12-significant-digit floats.
std::string csv_from_steady(const DriveParams& p, const SteadyStateSolution& s);
std::string csv_from_visibility(const DriveParams& p, const VisibilityReport& r);
std::string csv_from_pattern(const std::vector<double>& deltas,
                             const std::vector<double>& intensities);
std::string csv_from_sweep(const SweepTable& table);
std::string csv_from_standing_wave(const std::vector<StandingWaveRow>& rows);

// JSON: one top-level object {params, rows, meta}.
std::string json_from_steady(const DriveParams& p, const SteadyStateSolution& s,
                             const OutputMeta& meta);
std::string json_from_visibility(const DriveParams& p, const VisibilityReport& r,
                                 const OutputMeta& meta);
std::string json_from_pattern(const DriveParams& p, const std::vector<double>& deltas,
                              const std::vector<double>& intensities, const OutputMeta& meta);
std::string json_from_sweep(const SweepTable& table, const OutputMeta& meta);
std::string json_from_standing_wave(const StandingWaveSpec& spec,
                                    const std::vector<StandingWaveRow>& rows,
                                    const OutputMeta& meta);

// Writes through a temporary file in the same directory and renames on
// success, so failures never leave partial outputs.  Throws
// InvalidSpecError when the destination is not writable.
void write_text_atomic(const std::string& path, const std::string& content);

// Companion gnuplot script plotting the named CSV (referenced by relative
// path).  The first axis_count columns are plot axes (1 -> line plot,
// 2 -> heat map); the last entry of column_names is the value column.
std::string gnuplot_script_for_csv(const std::string& csv_basename, int axis_count,
                                   const std::vector<std::string>& column_names);

}  // namespace qfringe
