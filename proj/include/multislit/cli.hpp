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


#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "multislit/hierarchy.hpp"
#include "multislit/optics.hpp"

namespace multislit::cli {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_io = 2, exit_assertion = 3 };

/// Residue threshold `vanish` gates on.
inline constexpr double vanish_threshold = 1e-9;

enum class Command { curve, vanish, sorkin, table, montecarlo };
enum class OutputFormat { csv, json };

/// Phase grid written `start:end:points` on the command line (radians).
struct GridSpec {
    double start = 0.0;
    double end = 0.0;
    std::size_t points = 0;
};

/// Throws DomainError on malformed text.
GridSpec parse_grid(const std::string& text);

/// Effective settings of one invocation, after defaults, config file and flags are merged.
struct ExperimentConfig {
    Command command = Command::curve;
    std::size_t m = 2;
    std::size_t n = 5;
    std::size_t m_max = 11;
    DetectorPreset preset = DetectorPreset::fixed_scan;
    std::string grid_text = "0:6.283185307179586:257";
    GridSpec grid{};
    bool normalize = false;
    std::uint64_t seed = default_seed;
    std::size_t trials = 0;
    double delta = 1e-3;
    std::string law = "uniform";
    std::string variant = "iid";
    double epsilon = 1e-3;
    std::string output_path;
    OutputFormat format = OutputFormat::csv;
    std::string curve_output_path;
};

/// Formats with 12 significant digits, the precision of every CSV value.
std::string format_value(double value);

/**
 * Runs one command line (without the program name). Results go to `out`
 * unless --output names a file; diagnostics go to `err`. Returns the process
 * exit code: 0 success, 1 usage error, 2 I/O error, 3 failed assertion.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace multislit::cli
