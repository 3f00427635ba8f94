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

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace multislit {

using Complex = std::complex<double>;

/// Slit spacing and wavelength, both in the same (arbitrary) length unit.
struct Geometry {
    double slit_spacing;
    double wavelength;

    bool valid() const noexcept;
};

/**
 * Ordered set of slits on a line.
 *
 * Labels are 0-based positions along the grating; a slit with label s picks up
 * the optical phase s*delta at a detector of optical phase delta. Subsets keep
 * the original labels so relative phases are preserved.
 */
class SlitSet {
public:
    /// Slits 0, 1, ..., n-1 with unit weights.
    static SlitSet contiguous(std::size_t n);

    SlitSet(std::vector<int> labels, std::vector<Complex> weights);
    explicit SlitSet(std::vector<int> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    std::span<const int> labels() const noexcept { return labels_; }
    std::span<const Complex> weights() const noexcept { return weights_; }

    int label(std::size_t pos) const { return labels_.at(pos); }
    Complex weight(std::size_t pos) const { return weights_.at(pos); }

    /// Position of `label` in this set, or -1 when absent.
    long position_of(int label) const noexcept;
    bool contains(int label) const noexcept { return position_of(label) >= 0; }

    /// Members selected by a bitmask over positions (bit i = i-th member).
    SlitSet subset(std::uint64_t mask) const;

    /// Same weights, every label shifted by `offset`.
    SlitSet translated(int offset) const;

    /// Bitmask selecting every member.
    std::uint64_t full_mask() const noexcept;

    bool operator==(const SlitSet&) const = default;

private:
    std::vector<int> labels_;
    std::vector<Complex> weights_;
};

/// Optical phases of the M coincidence detectors, in radians (not reduced mod 2*pi).
class DetectorPhases {
public:
    DetectorPhases(std::vector<double> phases);
    DetectorPhases(std::initializer_list<double> phases);

    std::size_t size() const noexcept { return phases_.size(); }
    std::span<const double> values() const noexcept { return phases_; }
    double operator[](std::size_t i) const { return phases_.at(i); }

    bool operator==(const DetectorPhases&) const = default;

private:
    std::vector<double> phases_;
};

enum class DetectorPreset { fixed_scan, opposite_scan };

/// Far-field optical phase 2*pi*d*sin(theta)/lambda of a detector at angle theta.
double phase_from_angle(const Geometry& geometry, double theta);

/// Detectors 1..M-1 parked at (i-1)*2*pi, detector M scanning at delta.
DetectorPhases preset_fixed_scan(std::size_t particles, double delta);

/// Two detectors scanned in opposite directions: (delta, -delta).
DetectorPhases preset_opposite_scan(double delta);

/// Dispatches on the preset; opposite_scan requires two particles.
DetectorPhases preset_phases(DetectorPreset preset, std::size_t particles, double delta);

}  // namespace multislit
