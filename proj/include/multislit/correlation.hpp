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
#include <vector>

#include "multislit/optics.hpp"

namespace multislit {

/// Exponent p of the detection law P = |psi|^p. Born's rule is p = 2.
inline constexpr double born_exponent = 2.0;

/// A non-negative correlation signal G^(M) together with the configuration it was evaluated for.
struct CorrelationValue {
    double value;
    std::size_t particles;
    SlitSet slits;
    DetectorPhases phases;
};

/// Signed classical bookkeeping term (exclusive-order classical signal).
struct SignedCorrelation {
    double value;
    std::size_t order;
    std::size_t particles;
};

/// Coherent single-detector grating sum f_S(delta) = sum_s w_s exp(i s delta).
Complex grating_amplitude(const SlitSet& slits, double delta);

/// Quantum M-fold coincidence signal prod_i |f_S(delta_i)|^p.
CorrelationValue quantum_correlation(const SlitSet& slits, const DetectorPhases& phases,
                                     double exponent = born_exponent);

/// Incoherent sum over all N^M paths of prod_i |w_{sigma_i}|^p.
CorrelationValue classical_correlation(const SlitSet& slits, const DetectorPhases& phases,
                                       double exponent = born_exponent);

struct ExclusiveClassicalOptions {
    /// Largest slit count the subset induction may recurse over.
    std::size_t max_slits = 16;
};

/// Classical signal carried by paths that use every slit of `slits` (and no other).
SignedCorrelation exclusive_classical(const SlitSet& slits, const DetectorPhases& phases,
                                      const ExclusiveClassicalOptions& options = {},
                                      double exponent = born_exponent);

/// Quantum signal with every detector on the optical axis.
CorrelationValue central_peak(const SlitSet& slits, std::size_t particles);

/**
 * Evaluates correlation signals of arbitrary sub-gratings of one slit set at
 * fixed detector phases. Subsets are addressed by bitmask over member
 * positions. Per-detector phasors are precomputed once; the exclusive
 * classical terms are memoized per subset for the lifetime of the context.
 */
class CorrelationContext {
public:
    CorrelationContext(const SlitSet& slits, const DetectorPhases& phases,
                       double exponent = born_exponent,
                       const ExclusiveClassicalOptions& options = {});

    std::size_t slit_count() const noexcept { return slit_count_; }
    std::size_t particles() const noexcept { return particles_; }

    double quantum(std::uint64_t mask) const;
    double classical(std::uint64_t mask) const;
    double exclusive_classical(std::uint64_t mask);

private:
    std::size_t slit_count_;
    std::size_t particles_;
    double exponent_;
    std::size_t max_exclusive_slits_;
    std::vector<Complex> phasors_;      // [detector * N + position]
    std::vector<double> slit_intensity_;  // |w_s|^p
    std::vector<double> exclusive_memo_;  // NaN = not yet computed
};

}  // namespace multislit
