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
#include <span>
#include <string_view>
#include <vector>

#include "multislit/correlation.hpp"
#include "multislit/optics.hpp"
#include "multislit/paths.hpp"

namespace multislit {

enum class InterferenceMethod { inclusion_exclusion, pair_oracle };

std::string_view to_string(InterferenceMethod method) noexcept;

/// N-th order M-particle interference term I^(M)_N with its provenance.
struct InterferenceValue {
    double value;
    std::size_t particles;
    std::size_t order;
    SlitSet slits;
    DetectorPhases phases;
    InterferenceMethod method;
    /// Imaginary part left over by the pair oracle (always 0 for inclusion-exclusion).
    double imaginary_residue = 0.0;
};

struct HierarchyOptions {
    /// Upper bound on N; the alternating sum visits 2^N - 1 sub-gratings.
    std::size_t max_slits = 30;
    ExclusiveClassicalOptions exclusive{};
    /// Detection-law exponent; anything but 2 models a Born-rule violation.
    double exponent = born_exponent;
};

/**
 * Lexicographic k-combinations of {0, ..., n-1}, yielded as position bitmasks.
 *
 *     for (CombinationIterator it(5, 2); !it.done(); it.next()) use(it.mask());
 */
class CombinationIterator {
public:
    CombinationIterator(std::size_t n, std::size_t k);

    bool done() const noexcept { return done_; }
    std::uint64_t mask() const noexcept;
    std::span<const std::size_t> indices() const noexcept { return indices_; }
    void next();

private:
    std::size_t n_;
    std::vector<std::size_t> indices_;
    bool done_;
};

/**
 * Inclusion-exclusion evaluation: the N-slit quantum signal, the alternating sum
 * over every (N-l)-slit sub-grating, minus the classical paths that use exactly
 * the N slits. N = 1 yields exactly 0.
 */
InterferenceValue interference(std::size_t particles, const SlitSet& slits,
                               const DetectorPhases& phases, const HierarchyOptions& options = {});

enum class OracleStrategy { automatic, direct, bucketed };

struct OracleOptions {
    OracleStrategy strategy = OracleStrategy::automatic;
    PairReductionOptions pairs{};
    /// automatic: use the direct double loop while N^(2M) stays at or below this.
    std::uint64_t direct_pair_limit = std::uint64_t{1} << 24;
};

/// Sum over off-diagonal path pairs whose joint support is the whole slit set.
InterferenceValue interference_oracle(std::size_t particles, const SlitSet& slits,
                                      const DetectorPhases& phases,
                                      const OracleOptions& options = {});

inline constexpr std::uint64_t default_seed = 20180117;

/// `count` phases drawn uniformly from [0, 2*pi) by a generator seeded with `seed`.
std::vector<DetectorPhases> random_phase_draws(std::size_t particles, std::size_t count,
                                               std::uint64_t seed);

struct VanishingReport {
    std::size_t particles;
    std::size_t order;
    std::size_t trials;
    std::uint64_t seed;
    double central_peak;
    double max_abs;
    double max_normalized;
    /// True when N >= 2M + 1, i.e. the term must vanish under Born's rule.
    bool vanishing_expected;
};

/// Evaluates I^(M)_N on the slits 0..N-1 at `trials` random phase vectors.
VanishingReport vanishing_check(std::size_t particles, std::size_t order, std::size_t trials,
                                std::uint64_t seed = default_seed,
                                const HierarchyOptions& options = {});

struct CurvePoint {
    double delta;
    double value;
};

/// I^(M)_N on slits 0..N-1 along a scan of the chosen detector preset.
std::vector<CurvePoint> curve(std::size_t particles, std::size_t order, DetectorPreset preset,
                              std::span<const double> grid, bool normalize,
                              const HierarchyOptions& options = {});

/// `points` evenly spaced phases from start to end inclusive.
std::vector<double> linear_grid(double start, double end, std::size_t points);

}  // namespace multislit
