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


#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "multislit/correlation.hpp"
#include "multislit/error.hpp"
#include "multislit/optics.hpp"

using namespace multislit;
constexpr double pi = std::numbers::pi;

TEST_CASE("phase_from_angle maps detector angles to optical phases") {
    const Geometry unit{1.0, 1.0};
    CHECK(phase_from_angle(unit, 0.0) == 0.0);
    CHECK(phase_from_angle(unit, pi / 2 - 1e-9) == doctest::Approx(2 * pi).epsilon(1e-12));
    CHECK(phase_from_angle(Geometry{2.0, 1.0}, pi / 6) == doctest::Approx(2 * pi).epsilon(1e-14));
}

TEST_CASE("phase_from_angle is odd and monotone") {
    const Geometry g{3.0, 0.7};
    double previous = -std::numeric_limits<double>::infinity();
    for (int i = -99; i <= 99; ++i) {
        const double theta = i * (pi / 2) / 100.0;
        const double phase = phase_from_angle(g, theta);
        CHECK(phase == doctest::Approx(-phase_from_angle(g, -theta)).epsilon(1e-15));
        CHECK(phase > previous);
        previous = phase;
    }
}

TEST_CASE("phase_from_angle rejects invalid input") {
    CHECK_THROWS_AS(phase_from_angle({1.0, 1.0}, std::nan("")), DomainError);
    CHECK_THROWS_AS(phase_from_angle({1.0, 1.0}, INFINITY), DomainError);
    CHECK_THROWS_AS(phase_from_angle({0.0, 1.0}, 0.1), DomainError);
    CHECK_THROWS_AS(phase_from_angle({1.0, -1.0}, 0.1), DomainError);
    CHECK_THROWS_AS(phase_from_angle({1.0, 1.0}, pi / 2), DomainError);
}

TEST_CASE("fixed-scan preset parks all but the last detector at multiples of 2 pi") {
    CHECK(preset_fixed_scan(2, pi) == DetectorPhases{0.0, pi});
    CHECK(preset_fixed_scan(1, 0.7) == DetectorPhases{0.7});
    CHECK(preset_fixed_scan(4, 0.0) == DetectorPhases{0.0, 2 * pi, 4 * pi, 0.0});
    CHECK_THROWS_AS(preset_fixed_scan(0, 0.0), DomainError);
}

TEST_CASE("opposite-scan preset") {
    CHECK(preset_opposite_scan(pi / 3) == DetectorPhases{pi / 3, -pi / 3});
    CHECK(preset_opposite_scan(0.0) == DetectorPhases{0.0, 0.0});
    CHECK(preset_opposite_scan(2 * pi) == DetectorPhases{2 * pi, -2 * pi});
    CHECK(preset_phases(DetectorPreset::opposite_scan, 2, 0.5) == preset_opposite_scan(0.5));
    CHECK_THROWS_AS(preset_phases(DetectorPreset::opposite_scan, 3, 0.5), DomainError);
}

TEST_CASE("fixed-scan at zero sits on the central peak of every sub-grating") {
    for (std::size_t m = 1; m <= 4; ++m) {
        for (std::size_t n = 1; n <= 5; ++n) {
            const auto slits = SlitSet::contiguous(n);
            const double value = quantum_correlation(slits, preset_fixed_scan(m, 0.0)).value;
            CHECK(value == doctest::Approx(central_peak(slits, m).value).epsilon(1e-12));
        }
    }
}

TEST_CASE("SlitSet invariants") {
    CHECK_THROWS_AS(SlitSet(std::vector<int>{}), DomainError);
    CHECK_THROWS_AS(SlitSet(std::vector<int>{0, 0}), DomainError);
    CHECK_THROWS_AS(SlitSet(std::vector<int>{2, 1}), DomainError);
    CHECK_THROWS_AS(SlitSet(std::vector<int>{-1, 1}), DomainError);
    CHECK_THROWS_AS(SlitSet({0, 1}, {Complex{1, 0}}), DomainError);

    const auto five = SlitSet::contiguous(5);
    const auto sub = five.subset(0b10110);
    CHECK(std::vector<int>(sub.labels().begin(), sub.labels().end()) == std::vector<int>{1, 2, 4});
    CHECK(sub.position_of(4) == 2);
    CHECK(sub.position_of(3) == -1);
    CHECK(five.full_mask() == 0b11111u);
}

TEST_CASE("DetectorPhases rejects empty and non-finite input") {
    CHECK_THROWS_AS(DetectorPhases(std::vector<double>{}), DomainError);
    CHECK_THROWS_AS((DetectorPhases{0.0, std::nan("")}), DomainError);
}
