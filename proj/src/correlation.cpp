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


#include "multislit/correlation.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "multislit/error.hpp"
#include "multislit/numeric.hpp"

namespace multislit {
namespace {

double detection_law(Complex amplitude, double exponent) {
    if (exponent == born_exponent) return std::norm(amplitude);
    return std::pow(std::abs(amplitude), exponent);
}

}  // namespace

Complex grating_amplitude(const SlitSet& slits, double delta) {
    if (!std::isfinite(delta)) throw DomainError("detector phase must be finite");
    Complex sum{};
    for (std::size_t s = 0; s < slits.size(); ++s)
        sum += slits.weight(s) * std::polar(1.0, slits.label(s) * delta);
    return sum;
}

CorrelationValue quantum_correlation(const SlitSet& slits, const DetectorPhases& phases,
                                     double exponent) {
    CorrelationContext context(slits, phases, exponent);
    return {context.quantum(slits.full_mask()), phases.size(), slits, phases};
}

CorrelationValue classical_correlation(const SlitSet& slits, const DetectorPhases& phases,
                                       double exponent) {
    CorrelationContext context(slits, phases, exponent);
    return {context.classical(slits.full_mask()), phases.size(), slits, phases};
}

SignedCorrelation exclusive_classical(const SlitSet& slits, const DetectorPhases& phases,
                                      const ExclusiveClassicalOptions& options, double exponent) {
    CorrelationContext context(slits, phases, exponent, options);
    return {context.exclusive_classical(slits.full_mask()), slits.size(), phases.size()};
}

CorrelationValue central_peak(const SlitSet& slits, std::size_t particles) {
    if (particles == 0) throw DomainError("central peak needs at least one detector");
    return quantum_correlation(slits, DetectorPhases(std::vector<double>(particles, 0.0)));
}

CorrelationContext::CorrelationContext(const SlitSet& slits, const DetectorPhases& phases,
                                       double exponent, const ExclusiveClassicalOptions& options)
    : slit_count_(slits.size()),
      particles_(phases.size()),
      exponent_(exponent),
      max_exclusive_slits_(options.max_slits),
      phasors_(phases.size() * slits.size()),
      slit_intensity_(slits.size()) {
    if (!std::isfinite(exponent) || exponent <= 0.0)
        throw DomainError("detection-law exponent must be finite and positive");
    if (slit_count_ > 63) throw RangeError("subset masks support at most 63 slits");
    for (std::size_t i = 0; i < particles_; ++i)
        for (std::size_t s = 0; s < slit_count_; ++s)
            phasors_[i * slit_count_ + s] =
                slits.weight(s) * std::polar(1.0, slits.label(s) * phases[i]);
    for (std::size_t s = 0; s < slit_count_; ++s)
        slit_intensity_[s] = detection_law(slits.weight(s), exponent_);
}

double CorrelationContext::quantum(std::uint64_t mask) const {
    double product = 1.0;
    for (std::size_t i = 0; i < particles_; ++i) {
        Complex f{};
        for (std::size_t s = 0; s < slit_count_; ++s)
            if (mask & (std::uint64_t{1} << s)) f += phasors_[i * slit_count_ + s];
        product *= detection_law(f, exponent_);
    }
    return product;
}

double CorrelationContext::classical(std::uint64_t mask) const {
    // the path sum factorizes detector by detector
    double per_detector = 0.0;
    for (std::size_t s = 0; s < slit_count_; ++s)
        if (mask & (std::uint64_t{1} << s)) per_detector += slit_intensity_[s];
    double product = 1.0;
    for (std::size_t i = 0; i < particles_; ++i) product *= per_detector;
    return product;
}

double CorrelationContext::exclusive_classical(std::uint64_t mask) {
    const auto order = static_cast<std::size_t>(std::popcount(mask));
    if (order == 0) return 0.0;
    if (order > max_exclusive_slits_ || slit_count_ > max_exclusive_slits_)
        throw EnumerationLimitError(slit_count_, particles_,
                                    "exclusive classical induction exceeds slit budget");
    if (exclusive_memo_.empty())
        exclusive_memo_.assign(std::size_t{1} << slit_count_,
                               std::numeric_limits<double>::quiet_NaN());
    double& cached = exclusive_memo_[mask];
    if (!std::isnan(cached)) return cached;

    if (order == 1) {
        cached = classical(mask);
        return cached;
    }
    CompensatedSum sum;
    sum += classical(mask);
    // every non-empty proper sub-combination
    for (std::uint64_t sub = (mask - 1) & mask; sub != 0; sub = (sub - 1) & mask)
        sum += -exclusive_classical(sub);
    exclusive_memo_[mask] = sum.value();
    return exclusive_memo_[mask];
}

}  // namespace multislit
