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


#include "multislit/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "multislit/error.hpp"

namespace multislit {

bool Geometry::valid() const noexcept {
    return std::isfinite(slit_spacing) && std::isfinite(wavelength) && slit_spacing > 0.0 &&
           wavelength > 0.0;
}

SlitSet SlitSet::contiguous(std::size_t n) {
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i);
    return SlitSet(std::move(labels));
}

SlitSet::SlitSet(std::vector<int> labels, std::vector<Complex> weights)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
    if (labels_.empty()) throw DomainError("slit set must contain at least one slit");
    if (labels_.size() > 64) throw RangeError("slit sets are limited to 64 members");
    if (weights_.size() != labels_.size())
        throw DomainError("slit set needs exactly one weight per slit");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] < 0) throw DomainError("slit labels must be non-negative");
        if (i > 0 && labels_[i] <= labels_[i - 1])
            throw DomainError("slit labels must be strictly increasing");
        if (!std::isfinite(weights_[i].real()) || !std::isfinite(weights_[i].imag()))
            throw DomainError("slit weights must be finite");
    }
}

SlitSet::SlitSet(std::vector<int> labels)
    : SlitSet(labels, std::vector<Complex>(labels.size(), Complex{1.0, 0.0})) {}

long SlitSet::position_of(int label) const noexcept {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return -1;
    return static_cast<long>(it - labels_.begin());
}

SlitSet SlitSet::subset(std::uint64_t mask) const {
    std::vector<int> labels;
    std::vector<Complex> weights;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (mask & (std::uint64_t{1} << i)) {
            labels.push_back(labels_[i]);
            weights.push_back(weights_[i]);
        }
    }
    return SlitSet(std::move(labels), std::move(weights));
}

SlitSet SlitSet::translated(int offset) const {
    std::vector<int> labels = labels_;
    for (int& l : labels) l += offset;
    return SlitSet(std::move(labels), weights_);
}

std::uint64_t SlitSet::full_mask() const noexcept {
    return labels_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << labels_.size()) - 1;
}

DetectorPhases::DetectorPhases(std::vector<double> phases) : phases_(std::move(phases)) {
    if (phases_.empty()) throw DomainError("at least one detector phase is required");
    for (double p : phases_)
        if (!std::isfinite(p)) throw DomainError("detector phases must be finite");
}

DetectorPhases::DetectorPhases(std::initializer_list<double> phases)
    : DetectorPhases(std::vector<double>(phases)) {}

double phase_from_angle(const Geometry& geometry, double theta) {
    if (!geometry.valid()) throw DomainError("geometry needs finite positive spacing and wavelength");
    if (!std::isfinite(theta)) throw DomainError("detection angle must be finite");
    if (std::abs(theta) >= std::numbers::pi / 2)
        throw DomainError("detection angle must satisfy |theta| < pi/2");
    return 2.0 * std::numbers::pi * geometry.slit_spacing * std::sin(theta) / geometry.wavelength;
}

DetectorPhases preset_fixed_scan(std::size_t particles, double delta) {
    if (particles == 0) throw DomainError("fixed-scan preset needs at least one detector");
    std::vector<double> phases(particles);
    for (std::size_t i = 0; i + 1 < particles; ++i)
        phases[i] = static_cast<double>(i) * 2.0 * std::numbers::pi;
    phases.back() = delta;
    return DetectorPhases(std::move(phases));
}

DetectorPhases preset_opposite_scan(double delta) { return DetectorPhases{delta, -delta}; }

DetectorPhases preset_phases(DetectorPreset preset, std::size_t particles, double delta) {
    switch (preset) {
        case DetectorPreset::fixed_scan:
            return preset_fixed_scan(particles, delta);
        case DetectorPreset::opposite_scan:
            if (particles != 2)
                throw DomainError("opposite-scan preset is defined for two particles only, got M=" +
                                  std::to_string(particles));
            return preset_opposite_scan(delta);
    }
    throw DomainError("unknown detector preset");
}

}  // namespace multislit
