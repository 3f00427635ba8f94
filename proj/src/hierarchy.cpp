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


#include "multislit/hierarchy.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "multislit/error.hpp"
#include "multislit/numeric.hpp"

namespace multislit {
namespace {

void require_detectors(std::size_t particles, const DetectorPhases& phases) {
    if (particles == 0) throw DomainError("interference needs at least one particle");
    if (phases.size() != particles)
        throw DomainError("expected " + std::to_string(particles) + " detector phases, got " +
                          std::to_string(phases.size()));
}

}  // namespace

std::string_view to_string(InterferenceMethod method) noexcept {
    switch (method) {
        case InterferenceMethod::inclusion_exclusion:
            return "inclusion_exclusion";
        case InterferenceMethod::pair_oracle:
            return "pair_oracle";
    }
    return "unknown";
}

CombinationIterator::CombinationIterator(std::size_t n, std::size_t k)
    : n_(n), indices_(k), done_(k > n) {
    for (std::size_t i = 0; i < k; ++i) indices_[i] = i;
}

std::uint64_t CombinationIterator::mask() const noexcept {
    std::uint64_t m = 0;
    for (auto i : indices_) m |= std::uint64_t{1} << i;
    return m;
}

void CombinationIterator::next() {
    const std::size_t k = indices_.size();
    std::size_t i = k;
    while (i > 0 && indices_[i - 1] == n_ - k + i - 1) --i;
    if (i == 0) {
        done_ = true;
        return;
    }
    ++indices_[i - 1];
    for (std::size_t j = i; j < k; ++j) indices_[j] = indices_[j - 1] + 1;
}

InterferenceValue interference(std::size_t particles, const SlitSet& slits,
                               const DetectorPhases& phases, const HierarchyOptions& options) {
    require_detectors(particles, phases);
    const std::size_t n = slits.size();
    if (n > options.max_slits || n > 63)
        throw EnumerationLimitError(n, particles, "slit-combination sum exceeds budget");

    InterferenceValue result{0.0, particles, n, slits, phases, InterferenceMethod::inclusion_exclusion};
    // a single slit has no interference: G and its classical counterpart coincide
    if (n == 1) return result;

    CorrelationContext context(slits, phases, options.exponent, options.exclusive);
    CompensatedSum sum;
    sum += context.quantum(slits.full_mask());
    for (std::size_t l = 1; l < n; ++l) {
        CompensatedSum level;
        for (CombinationIterator combo(n, n - l); !combo.done(); combo.next())
            level += context.quantum(combo.mask());
        sum += (l % 2 == 1) ? -level.value() : level.value();
    }
    sum += -context.exclusive_classical(slits.full_mask());
    result.value = sum.value();
    return result;
}

InterferenceValue interference_oracle(std::size_t particles, const SlitSet& slits,
                                      const DetectorPhases& phases, const OracleOptions& options) {
    require_detectors(particles, phases);
    OracleStrategy strategy = options.strategy;
    if (strategy == OracleStrategy::automatic) {
        const auto pairs = saturating_pow(slits.size(), static_cast<unsigned>(2 * particles));
        strategy = pairs <= options.direct_pair_limit ? OracleStrategy::direct
                                                      : OracleStrategy::bucketed;
    }
    const PairTally tally =
        strategy == OracleStrategy::direct
            ? reduce_pairs(slits, phases, PairSelection::exact_support_offdiagonal, options.pairs)
            : reduce_pairs_bucketed(slits, phases, PairSelection::exact_support_offdiagonal,
                                    options.pairs);
    return {tally.sum.real(), particles, slits.size(), slits, phases,
            InterferenceMethod::pair_oracle, tally.sum.imag()};
}

std::vector<DetectorPhases> random_phase_draws(std::size_t particles, std::size_t count,
                                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
    std::vector<DetectorPhases> draws;
    draws.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        std::vector<double> phases(particles);
        for (auto& p : phases) p = uniform(rng);
        draws.emplace_back(std::move(phases));
    }
    return draws;
}

VanishingReport vanishing_check(std::size_t particles, std::size_t order, std::size_t trials,
                                std::uint64_t seed, const HierarchyOptions& options) {
    if (order == 0) throw DomainError("interference order must be at least 1");
    const SlitSet slits = SlitSet::contiguous(order);
    VanishingReport report{particles, order, trials, seed, central_peak(slits, particles).value,
                           0.0, 0.0, order >= 2 * particles + 1};
    for (const auto& phases : random_phase_draws(particles, trials, seed)) {
        const double value = std::abs(interference(particles, slits, phases, options).value);
        report.max_abs = std::max(report.max_abs, value);
    }
    report.max_normalized = report.max_abs / report.central_peak;
    return report;
}

std::vector<CurvePoint> curve(std::size_t particles, std::size_t order, DetectorPreset preset,
                              std::span<const double> grid, bool normalize,
                              const HierarchyOptions& options) {
    if (grid.empty()) throw DomainError("curve grid must not be empty");
    const SlitSet slits = SlitSet::contiguous(order);
    const double scale = normalize ? central_peak(slits, particles).value : 1.0;
    std::vector<CurvePoint> points;
    points.reserve(grid.size());
    for (double delta : grid) {
        const auto phases = preset_phases(preset, particles, delta);
        points.push_back({delta, interference(particles, slits, phases, options).value / scale});
    }
    return points;
}

std::vector<double> linear_grid(double start, double end, std::size_t points) {
    if (!std::isfinite(start) || !std::isfinite(end))
        throw DomainError("grid bounds must be finite");
    if (points == 0) throw DomainError("grid needs at least one point");
    if (points == 1) return {start};
    std::vector<double> grid(points);
    const double step = (end - start) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) grid[i] = start + step * static_cast<double>(i);
    grid.back() = end;
    return grid;
}

}  // namespace multislit
