#include "qfringe/output.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qfringe/errors.hpp"

namespace qfringe {

using ordered_json = nlohmann::ordered_json;

std::string format_number(double v) {
    if (v == 0.0) {
        v = 0.0;  // fold negative zero
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string format_bool(bool b) { return b ? "1" : "0"; }

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string line;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i != 0) {
            line += ',';
        }
        line += parts[i];
    }
    line += '\n';
    return line;
}

ordered_json params_json(const DriveParams& p) {
    return ordered_json{{"omega_sigma", p.omega_sigma},
                        {"omega_pi", p.omega_pi},
                        {"phi", p.phi},
                        {"delta", p.delta},
                        {"gamma", p.gamma}};
}

ordered_json meta_json(const OutputMeta& meta) {
    return ordered_json{{"version", kToolVersion}, {"engine", meta.engine}, {"seed", meta.seed}};
}

std::string dump(ordered_json j) { return j.dump(2) + "\n"; }

}  // namespace

std::string csv_from_steady(const DriveParams& p, const SteadyStateSolution& s) {
    std::string out =
        "omega_sigma,omega_pi,phi,delta,n_e,n_g,rho_sigma_re,rho_sigma_im,rho_pi_re,"
        "rho_pi_im,provenance\n";
    out += join({format_number(p.omega_sigma), format_number(p.omega_pi), format_number(p.phi),
                 format_number(p.delta), format_number(s.n_e), format_number(s.n_g),
                 format_number(s.rho_sigma.real()), format_number(s.rho_sigma.imag()),
                 format_number(s.rho_pi.real()), format_number(s.rho_pi.imag()),
                 to_string(s.provenance)});
    return out;
}

std::string csv_from_visibility(const DriveParams& p, const VisibilityReport& r) {
    std::string out =
        "omega_sigma,omega_pi,phi,delta,V,n_e,sum_rule_residual,detectable,provenance\n";
    out += join({format_number(p.omega_sigma), format_number(p.omega_pi), format_number(p.phi),
                 format_number(p.delta), format_number(r.visibility), format_number(r.n_e),
                 format_number(r.sum_rule_residual), format_bool(r.detectable),
                 to_string(r.provenance)});
    return out;
}

std::string csv_from_pattern(const std::vector<double>& deltas,
                             const std::vector<double>& intensities) {
    if (deltas.size() != intensities.size()) {
        throw InvalidInputError("csv_from_pattern: grid and intensity sizes differ");
    }
    std::string out = "delta,intensity\n";
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        out += join({format_number(deltas[i]), format_number(intensities[i])});
    }
    return out;
}

std::string csv_from_sweep(const SweepTable& table) {
    std::vector<std::string> header = table.axis_names;
    header.insert(header.end(), {"V", "n_e", "detectable", "degenerate"});
    std::string out = join(header);
    for (const SweepRow& row : table.rows) {
        std::vector<std::string> cells;
        cells.reserve(header.size());
        for (double v : row.axis_values) {
            cells.push_back(format_number(v));
        }
        cells.push_back(format_number(row.visibility));
        cells.push_back(format_number(row.n_e));
        cells.push_back(format_bool(row.detectable));
        cells.push_back(format_bool(row.degenerate));
        out += join(cells);
    }
    return out;
}

std::string csv_from_standing_wave(const std::vector<StandingWaveRow>& rows) {
    std::string out = "ky,r,V,n_e,detectable,degenerate\n";
    for (const StandingWaveRow& row : rows) {
        out += join({format_number(row.ky), format_number(row.r), format_number(row.visibility),
                     format_number(row.n_e), format_bool(row.detectable),
                     format_bool(row.degenerate)});
    }
    return out;
}

std::string json_from_steady(const DriveParams& p, const SteadyStateSolution& s,
                             const OutputMeta& meta) {
    ordered_json row{{"n_e", s.n_e},
                     {"n_g", s.n_g},
                     {"rho_sigma", {{"re", s.rho_sigma.real()}, {"im", s.rho_sigma.imag()}}},
                     {"rho_pi", {{"re", s.rho_pi.real()}, {"im", s.rho_pi.imag()}}},
                     {"provenance", to_string(s.provenance)}};
    return dump({{"params", params_json(p)},
                 {"rows", ordered_json::array({row})},
                 {"meta", meta_json(meta)}});
}

std::string json_from_visibility(const DriveParams& p, const VisibilityReport& r,
                                 const OutputMeta& meta) {
    ordered_json row{{"V", r.visibility},
                     {"n_e", r.n_e},
                     {"sum_rule_residual", r.sum_rule_residual},
                     {"detectable", r.detectable},
                     {"provenance", to_string(r.provenance)}};
    return dump({{"params", params_json(p)},
                 {"rows", ordered_json::array({row})},
                 {"meta", meta_json(meta)}});
}

std::string json_from_pattern(const DriveParams& p, const std::vector<double>& deltas,
                              const std::vector<double>& intensities, const OutputMeta& meta) {
    if (deltas.size() != intensities.size()) {
        throw InvalidInputError("json_from_pattern: grid and intensity sizes differ");
    }
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        rows.push_back({{"delta", deltas[i]}, {"intensity", intensities[i]}});
    }
    return dump({{"params", params_json(p)},
                 {"rows", std::move(rows)},
                 {"meta", meta_json(meta)}});
}

std::string json_from_sweep(const SweepTable& table, const OutputMeta& meta) {
    ordered_json rows = ordered_json::array();
    for (const SweepRow& row : table.rows) {
        ordered_json r;
        for (std::size_t k = 0; k < table.axis_names.size(); ++k) {
            r[table.axis_names[k]] = row.axis_values[k];
        }
        r["V"] = row.visibility;
        r["n_e"] = row.n_e;
        r["detectable"] = row.detectable;
        r["degenerate"] = row.degenerate;
        rows.push_back(std::move(r));
    }
    return dump({{"params", ordered_json{{"axes", table.axis_names}}},
                 {"rows", std::move(rows)},
                 {"meta", meta_json(meta)}});
}

std::string json_from_standing_wave(const StandingWaveSpec& spec,
                                    const std::vector<StandingWaveRow>& rows,
                                    const OutputMeta& meta) {
    ordered_json jrows = ordered_json::array();
    for (const StandingWaveRow& row : rows) {
        jrows.push_back({{"ky", row.ky},
                         {"r", row.r},
                         {"V", row.visibility},
                         {"n_e", row.n_e},
                         {"detectable", row.detectable},
                         {"degenerate", row.degenerate}});
    }
    ordered_json params{{"omega", spec.omega},
                        {"omega_sigma", spec.omega_sigma.value_or(spec.omega)},
                        {"phi", spec.phi}};
    return dump({{"params", std::move(params)},
                 {"rows", std::move(jrows)},
                 {"meta", meta_json(meta)}});
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string temp = path + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw InvalidSpecError("cannot open for writing: " + temp);
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::remove(temp.c_str());
            throw InvalidSpecError("write failed: " + temp);
        }
    }
    if (std::rename(temp.c_str(), path.c_str()) != 0) {
        std::remove(temp.c_str());
        throw InvalidSpecError("cannot move output into place: " + path);
    }
}

std::string gnuplot_script_for_csv(const std::string& csv_basename, int axis_count,
                                   const std::vector<std::string>& column_names) {
    if (axis_count < 1 || axis_count > 2 ||
        column_names.size() < static_cast<std::size_t>(axis_count) + 1) {
        throw InvalidInputError("gnuplot script: need 1 or 2 axis columns plus a value column");
    }
    const std::size_t value_col = column_names.size();
    std::ostringstream s;
    s << "# gnuplot companion script for " << csv_basename << "\n";
    s << "set datafile separator ','\n";
    s << "set key off\n";
    s << "set xlabel '" << column_names[0] << "'\n";
    if (axis_count == 1) {
        s << "set ylabel '" << column_names.back() << "'\n";
        s << "plot '" << csv_basename << "' every ::1 using 1:" << value_col
          << " with lines\n";
    } else {
        s << "set ylabel '" << column_names[1] << "'\n";
        s << "set cblabel '" << column_names.back() << "'\n";
        s << "set view map\n";
        s << "splot '" << csv_basename << "' every ::1 using 1:2:" << value_col
          << " with points pt 5 palette\n";
    }
    return s.str();
}

}  // namespace qfringe
