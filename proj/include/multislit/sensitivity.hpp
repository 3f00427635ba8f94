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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "multislit/hierarchy.hpp"
#include "multislit/optics.hpp"

namespace multislit {

/// Generalized Sorkin parameter: I^(M)_{2M+1}(phases) over the all-zero-phase G^(M) of the 2M+1 slits.
double sorkin(std::size_t particles, const DetectorPhases& phases, const SlitSet& slits,
              const HierarchyOptions& options = {});

/// Same, on slits 0..2M.
double sorkin(std::size_t particles, const DetectorPhases& phases);

/// C(M) = sum_{k=1}^{2M+1} binom(2M+1, k) (k/(2M+1))^(M-1).
double sensitivity_C(std::size_t particles);

/// kappa^(M)(0) / kappa^(1) = 3M/(2M+1) * sqrt(C(M)/7).
double sensitivity_ratio(std::size_t particles);

/// Linearized kappa^(M)(0) = M sqrt(C(M)) delta / G1(0), with the coherent peak G1(0) = (2M+1)^2.
double deviation_linearized(std::size_t particles, double delta);

/// Rounds half away from zero to one decimal.
double round_one_decimal(double x);

enum class DeviationLaw { uniform_symmetric, gaussian };

std::string_view to_string(DeviationLaw law) noexcept;
DeviationLaw parse_deviation_law(std::string_view text);

/**
 * Born-rule violation model.
 *
 * per_combination_iid draws one additive deviation per slit combination and
 * trial: uniform on [-magnitude, magnitude] or normal with standard deviation
 * `magnitude`. exponent_epsilon replaces |psi|^2 by |psi|^(2+epsilon)
 * everywhere, which is deterministic.
 */
struct DeviationModel {
    enum class Variant { per_combination_iid, exponent_epsilon };

    double magnitude = 1e-3;
    DeviationLaw law = DeviationLaw::uniform_symmetric;
    std::uint64_t seed = default_seed;
    Variant variant = Variant::per_combination_iid;
    double epsilon = 0.0;

    /// RMS of a single draw.
    double draw_rms() const;
};

struct SensitivityReport {
    std::size_t m;
    double c_of_m;
    double ratio;
    double table_row;
    std::optional<double> mc_rms{};
    std::optional<double> mc_prediction{};
    /// Same quantities under the linear central-peak convention G1_k(0) = k.
    std::optional<double> mc_rms_linear_peak{};
    std::optional<double> mc_prediction_linear_peak{};
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double delta = 0.0;
    DeviationLaw law = DeviationLaw::uniform_symmetric;
    std::vector<std::string> warnings{};
};

/// JSON with the stable report field names; absent optionals become null.
nlohmann::json to_json(const SensitivityReport& report);

/// Rows M = 2..max_particles with C(M), the ratio and its one-decimal rounding.
std::vector<SensitivityReport> sensitivity_table(std::size_t max_particles);

/// Central-peak convention for the per-combination single-particle signal G1_X(0).
enum class PeakConvention {
    coherent,  ///< unit-weight coherent grating: G1_k(0) = k^2
    linear,    ///< ratio of central peaks N/N': G1_k(0) = k
};

/**
 * RMS of kappa^(M)(0) predicted by first-order propagation of independent
 * per-combination deviations with RMS `draw_rms`:
 * M draw_rms sqrt(sum_k binom(2M+1,k) (G1_k/G1_{2M+1})^(2(M-1))) / G1_{2M+1}.
 */
double propagated_rms(std::size_t particles, double draw_rms, PeakConvention convention);

struct MonteCarloOptions {
    std::size_t threads = default_thread_count();
    /// Largest 2M+1 the per-combination draws may cover.
    std::size_t max_slits = 20;
};

/**
 * Monte-Carlo estimate of kappa^(M)(0) under a deviation model. Each trial
 * draws one deviation per slit combination X and replaces G^(M)_X(0) by
 * (G1_X(0) + Delta_X)^M in I^(M)_{2M+1}(0). Trial t uses its own generator
 * seeded from (seed, t), so results do not depend on the thread count.
 */
SensitivityReport deviation_montecarlo(std::size_t particles, const DeviationModel& model,
                                       std::size_t trials, const MonteCarloOptions& options = {});

struct LinearFit {
    double slope;
    double intercept;
    double r_squared;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Sorkin parameter with the detection law |psi|^(2+epsilon) in every signal.
double sorkin_exponent(std::size_t particles, const DetectorPhases& phases, double epsilon);

}  // namespace multislit
