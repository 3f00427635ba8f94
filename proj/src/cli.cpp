/**
 * Copyright 2026 The multislit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "multislit/cli.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "multislit/error.hpp"
#include "multislit/hierarchy.hpp"
#include "multislit/sensitivity.hpp"

namespace multislit::cli {
namespace {

class IoError : public Error {
public:
    using Error::Error;
};

std::string_view to_string(Command c) {
    switch (c) {
        case Command::curve: return "curve";
        case Command::vanish: return "vanish";
        case Command::sorkin: return "sorkin";
        case Command::table: return "table";
        case Command::montecarlo: return "montecarlo";
    }
    return "unknown";
}

std::string_view to_string(DetectorPreset p) {
    return p == DetectorPreset::fixed_scan ? "fixed-scan" : "opposite-scan";
}

nlohmann::json echo(const ExperimentConfig& c) {
    nlohmann::json j;
    j["command"] = std::string(to_string(c.command));
    switch (c.command) {
        case Command::curve:
        case Command::sorkin:
            j["m"] = c.m;
            if (c.command == Command::curve) j["n"] = c.n;
            j["preset"] = std::string(to_string(c.preset));
            j["grid"] = c.grid_text;
            j["normalize"] = c.normalize;
            break;
        case Command::vanish:
            j["m"] = c.m;
            j["n"] = c.n;
            j["trials"] = c.trials;
            j["seed"] = c.seed;
            break;
        case Command::table:
            j["m_max"] = c.m_max;
            break;
        case Command::montecarlo:
            j["m"] = c.m;
            j["delta"] = c.delta;
            j["law"] = c.law;
            j["variant"] = c.variant;
            j["epsilon"] = c.epsilon;
            j["trials"] = c.trials;
            j["seed"] = c.seed;
            break;
    }
    if (c.command != Command::vanish && c.command != Command::montecarlo)
        j["format"] = c.format == OutputFormat::csv ? "csv" : "json";
    j["output"] = c.output_path;
    return j;
}

// Writes `text` to the configured destination.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    file << text;
    file.flush();
    if (!file) throw IoError("failed writing '" + path + "'");
}

std::string curve_csv(const std::vector<CurvePoint>& points) {
    std::string text = "delta,value\n";
    for (const auto& p : points) text += format_value(p.delta) + "," + format_value(p.value) + "\n";
    return text;
}

nlohmann::json curve_json(const ExperimentConfig& c, const std::vector<CurvePoint>& points) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& p : points) rows.push_back({{"delta", p.delta}, {"value", p.value}});
    return {{"config", echo(c)}, {"points", rows}};
}

std::vector<double> validated_grid(ExperimentConfig& c) {
    c.grid = parse_grid(c.grid_text);
    if (c.grid.points < 2) throw DomainError("grid needs at least 2 points");
    if (c.grid.start == c.grid.end) throw DomainError("grid is degenerate (start == end)");
    return linear_grid(c.grid.start, c.grid.end, c.grid.points);
}

int run_curve(ExperimentConfig& c, std::ostream& out) {
    if (c.m == 0 || c.n == 0) throw DomainError("--m and --n must be at least 1");
    if (c.preset == DetectorPreset::opposite_scan && c.m != 2)
        throw DomainError("opposite-scan preset requires --m 2");
    const auto grid = validated_grid(c);
    const auto points = curve(c.m, c.n, c.preset, grid, c.normalize);
    emit(c.output_path,
         c.format == OutputFormat::csv ? curve_csv(points) : curve_json(c, points).dump(2) + "\n",
         out);
    return exit_ok;
}

int run_sorkin(ExperimentConfig& c, std::ostream& out) {
    if (c.m == 0) throw DomainError("--m must be at least 1");
    if (c.preset == DetectorPreset::opposite_scan && c.m != 2)
        throw DomainError("opposite-scan preset requires --m 2");
    const auto grid = validated_grid(c);
    std::vector<CurvePoint> points;
    for (double delta : grid)
        points.push_back({delta, sorkin(c.m, preset_phases(c.preset, c.m, delta))});
    emit(c.output_path,
         c.format == OutputFormat::csv ? curve_csv(points) : curve_json(c, points).dump(2) + "\n",
         out);
    return exit_ok;
}

int run_vanish(ExperimentConfig& c, std::ostream& out) {
    if (c.m == 0 || c.n == 0) throw DomainError("--m and --n must be at least 1");
    if (c.trials == 0) throw DomainError("--trials must be at least 1");
    const VanishingReport r = vanishing_check(c.m, c.n, c.trials, c.seed);
    const bool passed = r.max_normalized < vanish_threshold;
    nlohmann::json j{{"config", echo(c)},
                     {"m", r.particles},
                     {"n", r.order},
                     {"trials", r.trials},
                     {"seed", r.seed},
                     {"central_peak", r.central_peak},
                     {"max_abs", r.max_abs},
                     {"max_normalized", r.max_normalized},
                     {"vanishing_expected", r.vanishing_expected},
                     {"threshold", vanish_threshold},
                     {"passed", passed}};
    emit(c.output_path, j.dump(2) + "\n", out);
    return passed ? exit_ok : exit_assertion;
}

int run_table(ExperimentConfig& c, std::ostream& out) {
    if (c.m_max < 2) throw DomainError("--m-max must be at least 2");
    const auto rows = sensitivity_table(c.m_max);
    if (c.format == OutputFormat::csv) {
        std::string text = "m,c_of_m,ratio,ratio_rounded\n";
        for (const auto& r : rows)
            text += fmt::format("{},{},{},{:.1f}\n", r.m, format_value(r.c_of_m),
                                format_value(r.ratio), r.table_row);
        emit(c.output_path, text, out);
    } else {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) arr.push_back(to_json(r));
        emit(c.output_path, nlohmann::json{{"config", echo(c)}, {"rows", arr}}.dump(2) + "\n", out);
    }
    if (!c.curve_output_path.empty()) {
        // sensitivity growth curve, including the single-particle reference point
        std::string text = "m,ratio\n";
        for (std::size_t m = 1; m <= c.m_max; ++m)
            text += fmt::format("{},{}\n", m, format_value(sensitivity_ratio(m)));
        emit(c.curve_output_path, text, out);
    }
    return exit_ok;
}

int run_montecarlo(ExperimentConfig& c, std::ostream& out) {
    if (c.m == 0) throw DomainError("--m must be at least 1");
    DeviationModel model;
    model.magnitude = c.delta;
    model.law = parse_deviation_law(c.law);
    model.seed = c.seed;
    if (c.variant == "iid") {
        model.variant = DeviationModel::Variant::per_combination_iid;
    } else if (c.variant == "epsilon") {
        model.variant = DeviationModel::Variant::exponent_epsilon;
        model.epsilon = c.epsilon;
    } else {
        throw DomainError("--variant must be 'iid' or 'epsilon'");
    }
    const SensitivityReport report = deviation_montecarlo(c.m, model, c.trials);
    nlohmann::json j = to_json(report);
    j["config"] = echo(c);
    emit(c.output_path, j.dump(2) + "\n", out);
    return exit_ok;
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw DomainError("grid must be start:end:points, got '" + text + "'");
    GridSpec g;
    try {
        std::size_t used = 0;
        g.start = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("start");
        g.end = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("end");
        const long long points = std::stoll(parts[2], &used);
        if (used != parts[2].size() || points < 0) throw std::invalid_argument("points");
        g.points = static_cast<std::size_t>(points);
    } catch (const std::exception&) {
        throw DomainError("grid must be start:end:points, got '" + text + "'");
    }
    if (!std::isfinite(g.start) || !std::isfinite(g.end))
        throw DomainError("grid bounds must be finite");
    return g;
}

std::string format_value(double value) {
    if (!std::isfinite(value)) throw DomainError("refusing to emit a non-finite value");
    return fmt::format("{:.12g}", value);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Many-particle interference hierarchies behind multi-slit gratings"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML config file; [command] sections, keys = flag names");

    ExperimentConfig c;
    const std::map<std::string, DetectorPreset> presets{
        {"fixed-scan", DetectorPreset::fixed_scan}, {"opposite-scan", DetectorPreset::opposite_scan}};
    const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::csv},
                                                      {"json", OutputFormat::json}};

    auto add_output = [&](CLI::App* sub, bool with_format) {
        sub->add_option("-o,--output", c.output_path, "output file (default: stdout)");
        if (with_format)
            sub->add_option("--format", c.format, "csv or json")
                ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    };

    auto* curve_cmd = app.add_subcommand("curve", "I^(M)_N along a detector scan");
    curve_cmd->add_option("--m", c.m, "number of particles M")->required();
    curve_cmd->add_option("--n", c.n, "interference order N (slits)")->required();
    curve_cmd->add_option("--preset", c.preset, "fixed-scan or opposite-scan")
        ->transform(CLI::CheckedTransformer(presets, CLI::ignore_case));
    curve_cmd->add_option("--grid", c.grid_text, "start:end:points in radians");
    curve_cmd->add_flag("--normalize", c.normalize, "divide by the central peak");
    add_output(curve_cmd, true);

    auto* sorkin_cmd = app.add_subcommand("sorkin", "generalized Sorkin parameter along a scan");
    sorkin_cmd->add_option("--m", c.m, "number of particles M")->required();
    sorkin_cmd->add_option("--preset", c.preset, "fixed-scan or opposite-scan")
        ->transform(CLI::CheckedTransformer(presets, CLI::ignore_case));
    sorkin_cmd->add_option("--grid", c.grid_text, "start:end:points in radians");
    add_output(sorkin_cmd, true);

    c.seed = default_seed;
    auto* vanish_cmd = app.add_subcommand("vanish", "random-phase vanishing check (exit 3 on failure)");
    vanish_cmd->add_option("--m", c.m, "number of particles M")->required();
    vanish_cmd->add_option("--n", c.n, "interference order N")->required();
    vanish_cmd->add_option("--trials", c.trials, "random phase vectors")->default_val(100);
    vanish_cmd->add_option("--seed", c.seed, "generator seed");
    add_output(vanish_cmd, false);

    auto* table_cmd = app.add_subcommand("table", "sensitivity ratio table");
    table_cmd->add_option("--m-max", c.m_max, "largest M")->default_val(11);
    table_cmd->add_option("--curve-output", c.curve_output_path, "also write m,ratio for M = 1..m-max");
    add_output(table_cmd, true);

    auto* mc_cmd = app.add_subcommand("montecarlo", "Born-rule deviation Monte-Carlo");
    mc_cmd->add_option("--m", c.m, "number of particles M")->required();
    mc_cmd->add_option("--delta", c.delta, "deviation magnitude");
    mc_cmd->add_option("--law", c.law, "uniform or gaussian");
    mc_cmd->add_option("--variant", c.variant, "iid or epsilon");
    mc_cmd->add_option("--epsilon", c.epsilon, "exponent deviation for --variant epsilon");
    mc_cmd->add_option("--trials", c.trials, "Monte-Carlo trials")->default_val(100000);
    mc_cmd->add_option("--seed", c.seed, "generator seed");
    add_output(mc_cmd, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::FileError& e) {
        err << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (curve_cmd->parsed()) {
            c.command = Command::curve;
            return run_curve(c, out);
        }
        if (sorkin_cmd->parsed()) {
            c.command = Command::sorkin;
            return run_sorkin(c, out);
        }
        if (vanish_cmd->parsed()) {
            c.command = Command::vanish;
            return run_vanish(c, out);
        }
        if (table_cmd->parsed()) {
            c.command = Command::table;
            return run_table(c, out);
        }
        c.command = Command::montecarlo;
        return run_montecarlo(c, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

}  // namespace multislit::cli
