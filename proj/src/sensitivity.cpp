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


#include "multislit/sensitivity.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "multislit/correlation.hpp"
#include "multislit/error.hpp"
#include "multislit/numeric.hpp"
#include "multislit/parallel.hpp"

namespace multislit {
namespace {

constexpr std::size_t max_closed_form_particles = 31;  // 2M+1 <= 63

void require_particles(std::size_t particles) {
    if (particles == 0) throw DomainError("at least one particle is required");
}

// Per-combination inputs shared by every Monte-Carlo trial.
struct CombinationTable {
    std::vector<double> sign;        // (-1)^(N - |X|)
    std::vector<double> g1_coherent;  // G1_X(0) of the coherent sub-grating
    std::vector<double> g1_linear;    // |X|
};

CombinationTable combination_table(const SlitSet& slits) {
    const std::size_t n = slits.size();
    const std::size_t count = (std::size_t{1} << n) - 1;
    CorrelationContext single(slits, DetectorPhases{0.0});
    CombinationTable table;
    table.sign.resize(count);
    table.g1_coherent.resize(count);
    table.g1_linear.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t mask = i + 1;
        const auto k = static_cast<std::size_t>(std::popcount(mask));
        table.sign[i] = ((n - k) % 2 == 0) ? 1.0 : -1.0;
        table.g1_coherent[i] = single.quantum(mask);
        table.g1_linear[i] = static_cast<double>(k);
    }
    return table;
}

// (g + d)^M - g^M without cancellation for |d| << g
double deviated_excess(double g, double d, std::size_t particles) {
    return std::pow(g, static_cast<double>(particles)) *
           std::expm1(static_cast<double>(particles) * std::log1p(d / g));
}

}  // namespace

double sorkin(std::size_t particles, const DetectorPhases& phases, const SlitSet& slits,
              const HierarchyOptions& options) {
    require_particles(particles);
    if (slits.size() != 2 * particles + 1)
        throw DomainError("Sorkin parameter of " + std::to_string(particles) +
                          " particles needs exactly " + std::to_string(2 * particles + 1) +
                          " slits");
    const double numerator = interference(particles, slits, phases, options).value;
    const DetectorPhases zero(std::vector<double>(particles, 0.0));
    const double peak = quantum_correlation(slits, zero, options.exponent).value;
    if (!(peak > 0.0)) throw DegenerateNormalizationError("central peak vanishes");
    return numerator / peak;
}

double sorkin(std::size_t particles, const DetectorPhases& phases) {
    return sorkin(particles, phases, SlitSet::contiguous(2 * particles + 1));
}

double sensitivity_C(std::size_t particles) {
    require_particles(particles);
    if (particles > max_closed_form_particles)
        throw RangeError("C(M) is supported up to M = " +
                         std::to_string(max_closed_form_particles));
    const unsigned n = static_cast<unsigned>(2 * particles + 1);
    CompensatedSum sum;
    for (unsigned k = 1; k <= n; ++k) {
        const double fraction = static_cast<double>(k) / n;
        sum += static_cast<double>(binomial(n, k)) *
               std::pow(fraction, static_cast<double>(particles - 1));
    }
    return sum.value();
}

double sensitivity_ratio(std::size_t particles) {
    if (particles == 1) return 1.0;
    const double m = static_cast<double>(particles);
    return 3.0 * m / (2.0 * m + 1.0) * std::sqrt(sensitivity_C(particles) / 7.0);
}

double deviation_linearized(std::size_t particles, double delta) {
    require_particles(particles);
    if (!(delta >= 0.0) || !std::isfinite(delta))
        throw DomainError("deviation magnitude must be finite and non-negative");
    const double n = 2.0 * static_cast<double>(particles) + 1.0;
    return static_cast<double>(particles) * std::sqrt(sensitivity_C(particles)) * delta / (n * n);
}

double round_one_decimal(double x) { return std::round(x * 10.0) / 10.0; }

std::string_view to_string(DeviationLaw law) noexcept {
    switch (law) {
        case DeviationLaw::uniform_symmetric:
            return "uniform";
        case DeviationLaw::gaussian:
            return "gaussian";
    }
    return "unknown";
}

DeviationLaw parse_deviation_law(std::string_view text) {
    if (text == "uniform" || text == "uniform_symmetric") return DeviationLaw::uniform_symmetric;
    if (text == "gaussian" || text == "normal") return DeviationLaw::gaussian;
    throw DomainError("unknown deviation law '" + std::string(text) + "'");
}

double DeviationModel::draw_rms() const {
    switch (law) {
        case DeviationLaw::uniform_symmetric:
            return magnitude / std::sqrt(3.0);
        case DeviationLaw::gaussian:
            return magnitude;
    }
    return magnitude;
}

nlohmann::json to_json(const SensitivityReport& report) {
    auto optional = [](const std::optional<double>& v) -> nlohmann::json {
        if (v && std::isfinite(*v)) return *v;
        return nullptr;
    };
    nlohmann::json j;
    j["m"] = report.m;
    j["c_of_m"] = report.c_of_m;
    j["ratio"] = report.ratio;
    j["table_row"] = report.table_row;
    j["mc_rms"] = optional(report.mc_rms);
    j["mc_prediction"] = optional(report.mc_prediction);
    j["mc_rms_linear_peak"] = optional(report.mc_rms_linear_peak);
    j["mc_prediction_linear_peak"] = optional(report.mc_prediction_linear_peak);
    j["trials"] = report.trials;
    j["seed"] = report.seed;
    j["delta"] = report.delta;
    j["law"] = std::string(to_string(report.law));
    j["warnings"] = report.warnings;
    return j;
}

std::vector<SensitivityReport> sensitivity_table(std::size_t max_particles) {
    if (max_particles < 2) throw DomainError("sensitivity table starts at M = 2");
    std::vector<SensitivityReport> rows;
    for (std::size_t m = 2; m <= max_particles; ++m) {
        const double ratio = sensitivity_ratio(m);
        rows.push_back({m, sensitivity_C(m), ratio, round_one_decimal(ratio)});
    }
    return rows;
}

double propagated_rms(std::size_t particles, double draw_rms, PeakConvention convention) {
    require_particles(particles);
    if (particles > max_closed_form_particles)
        throw RangeError("propagation is supported up to M = " +
                         std::to_string(max_closed_form_particles));
    const unsigned n = static_cast<unsigned>(2 * particles + 1);
    auto g1 = [convention](double k) { return convention == PeakConvention::coherent ? k * k : k; };
    const double peak = g1(n);
    CompensatedSum variance_weight;
    for (unsigned k = 1; k <= n; ++k)
        variance_weight += static_cast<double>(binomial(n, k)) *
                           std::pow(g1(k) / peak, 2.0 * static_cast<double>(particles - 1));
    return static_cast<double>(particles) * draw_rms * std::sqrt(variance_weight.value()) / peak;
}

SensitivityReport deviation_montecarlo(std::size_t particles, const DeviationModel& model,
                                       std::size_t trials, const MonteCarloOptions& options) {
    require_particles(particles);
    if (!std::isfinite(model.magnitude) || model.magnitude < 0.0)
        throw DomainError("deviation magnitude must be finite and non-negative");
    if (!std::isfinite(model.epsilon)) throw DomainError("exponent deviation must be finite");
    const std::size_t n = 2 * particles + 1;
    if (n > options.max_slits)
        throw EnumerationLimitError(n, particles, "per-combination deviations exceed slit budget");

    SensitivityReport report{particles, sensitivity_C(particles), sensitivity_ratio(particles),
                             round_one_decimal(sensitivity_ratio(particles))};
    report.trials = trials;
    report.seed = model.seed;
    report.delta = model.magnitude;
    report.law = model.law;

    const DetectorPhases center = preset_fixed_scan(particles, 0.0);
    if (model.variant == DeviationModel::Variant::exponent_epsilon) {
        report.mc_rms = std::abs(sorkin_exponent(particles, center, model.epsilon));
        report.warnings.push_back("exponent_epsilon is deterministic; mc_rms is |kappa(0)|");
        return report;
    }

    if (trials < 1000) report.warnings.push_back("fewer than 1000 trials; RMS estimate is coarse");
    if (model.magnitude > 1e-2)
        report.warnings.push_back("delta above 1e-2; linearized prediction may not apply");
    if (model.magnitude > 0.1) report.warnings.push_back("delta above 0.1 is not small");
    if (trials == 0) return report;

    const SlitSet slits = SlitSet::contiguous(n);
    const CombinationTable table = combination_table(slits);
    const double m = static_cast<double>(particles);
    const double peak_coherent = std::pow(table.g1_coherent.back(), m);
    const double peak_linear = std::pow(table.g1_linear.back(), m);
    // Born-rule part of the numerator; zero up to rounding
    const double base_coherent = interference(particles, slits, center).value;
    CompensatedSum base_linear_sum;
    for (std::size_t i = 0; i < table.sign.size(); ++i)
        base_linear_sum += table.sign[i] * std::pow(table.g1_linear[i], m);
    const double base_linear = base_linear_sum.value();

    std::vector<double> kappa_sq_coherent(trials);
    std::vector<double> kappa_sq_linear(trials);
    auto run_chunk = [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            std::seed_seq seq{static_cast<std::uint32_t>(model.seed),
                              static_cast<std::uint32_t>(model.seed >> 32),
                              static_cast<std::uint32_t>(t),
                              static_cast<std::uint32_t>(std::uint64_t{t} >> 32)};
            std::mt19937_64 rng(seq);
            std::uniform_real_distribution<double> uniform(-model.magnitude, model.magnitude);
            std::normal_distribution<double> normal(0.0, model.magnitude);
            CompensatedSum coherent;
            CompensatedSum linear;
            coherent += base_coherent;
            linear += base_linear;
            for (std::size_t i = 0; i < table.sign.size(); ++i) {
                double d = 0.0;
                if (model.magnitude > 0.0)
                    d = model.law == DeviationLaw::uniform_symmetric ? uniform(rng) : normal(rng);
                coherent += table.sign[i] * deviated_excess(table.g1_coherent[i], d, particles);
                linear += table.sign[i] * deviated_excess(table.g1_linear[i], d, particles);
            }
            const double kc = coherent.value() / peak_coherent;
            const double kl = linear.value() / peak_linear;
            kappa_sq_coherent[t] = kc * kc;
            kappa_sq_linear[t] = kl * kl;
        }
        return 0;
    };
    parallel_chunks(trials, options.threads, run_chunk);

    CompensatedSum sum_coherent;
    CompensatedSum sum_linear;
    for (std::size_t t = 0; t < trials; ++t) {
        sum_coherent += kappa_sq_coherent[t];
        sum_linear += kappa_sq_linear[t];
    }
    report.mc_rms = std::sqrt(sum_coherent.value() / static_cast<double>(trials));
    report.mc_rms_linear_peak = std::sqrt(sum_linear.value() / static_cast<double>(trials));
    report.mc_prediction = propagated_rms(particles, model.draw_rms(), PeakConvention::coherent);
    report.mc_prediction_linear_peak =
        propagated_rms(particles, model.draw_rms(), PeakConvention::linear);
    return report;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw DomainError("line fit needs at least two paired samples");
    const double count = static_cast<double>(x.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= count;
    mean_y /= count;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mean_x) * (x[i] - mean_x);
        sxy += (x[i] - mean_x) * (y[i] - mean_y);
        syy += (y[i] - mean_y) * (y[i] - mean_y);
    }
    if (sxx == 0.0) throw DomainError("line fit needs distinct x values");
    const double slope = sxy / sxx;
    const double r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return {slope, mean_y - slope * mean_x, r_squared};
}

double sorkin_exponent(std::size_t particles, const DetectorPhases& phases, double epsilon) {
    HierarchyOptions options;
    options.exponent = born_exponent + epsilon;
    return sorkin(particles, phases, SlitSet::contiguous(2 * particles + 1), options);
}

}  // namespace multislit
