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
#include <numbers>
#include <random>

#include "multislit/error.hpp"
#include "multislit/numeric.hpp"
#include "multislit/paths.hpp"

using namespace multislit;
constexpr double pi = std::numbers::pi;

namespace {

std::vector<MultiPath> collect(const SlitSet& slits, std::size_t m) {
    std::vector<MultiPath> out;
    for (const auto& p : enumerate_paths(slits, m)) out.push_back(p);
    return out;
}

DetectorPhases random_phases(std::mt19937_64& rng, std::size_t m) {
    std::uniform_real_distribution<double> u(0.0, 2 * pi);
    std::vector<double> v(m);
    for (auto& x : v) x = u(rng);
    return DetectorPhases(v);
}

// Surjections from M detectors onto N slits, by inclusion-exclusion over missed slits.
long long surjections(int m, int n) {
    long long total = 0;
    for (int j = 0; j <= n; ++j) {
        long long term = static_cast<long long>(binomial(n, j));
        for (int i = 0; i < m; ++i) term *= (n - j);
        total += (j % 2 == 0) ? term : -term;
    }
    return total;
}

}  // namespace

TEST_CASE("enumerate_paths yields N^M lexicographic tuples") {
    const auto two = collect(SlitSet::contiguous(2), 2);
    REQUIRE(two.size() == 4);
    CHECK(two[0] == MultiPath{0, 0});
    CHECK(two[1] == MultiPath{0, 1});
    CHECK(two[2] == MultiPath{1, 0});
    CHECK(two[3] == MultiPath{1, 1});

    const auto single = collect(SlitSet::contiguous(1), 3);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == MultiPath{0, 0, 0});

    const auto nine = collect(SlitSet::contiguous(3), 2);
    CHECK(nine.size() == 9);
    CHECK(std::is_sorted(nine.begin(), nine.end()));
    CHECK(std::adjacent_find(nine.begin(), nine.end()) == nine.end());
}

TEST_CASE("enumerate_paths keeps original labels of a subset") {
    const auto paths = collect(SlitSet(std::vector<int>{2, 5}), 2);
    REQUIRE(paths.size() == 4);
    CHECK(paths[1] == MultiPath{2, 5});
}

TEST_CASE("enumerate_paths enforces its budget") {
    EnumerationBudget budget;
    budget.max_paths = 100;
    CHECK_NOTHROW(enumerate_paths(SlitSet::contiguous(10), 2, budget));
    try {
        enumerate_paths(SlitSet::contiguous(10), 3, budget);
        FAIL("expected EnumerationLimitError");
    } catch (const EnumerationLimitError& e) {
        CHECK(e.slits() == 10);
        CHECK(e.particles() == 3);
    }
}

TEST_CASE("path_amplitude examples") {
    const auto slits = SlitSet::contiguous(2);
    CHECK(std::abs(path_amplitude(slits, {0, 0}, {0.0, 0.0}) - Complex{1, 0}) < 1e-15);
    CHECK(std::abs(path_amplitude(slits, {1, 0}, {pi, pi}) - Complex{-1, 0}) < 1e-15);
    CHECK(std::abs(path_amplitude(slits, {1, 1}, {pi / 2, pi / 2}) - Complex{-1, 0}) < 1e-15);
    CHECK_THROWS_AS(path_amplitude(slits, {0}, {0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(path_amplitude(slits, {0, 3}, {0.0, 0.0}), DomainError);
}

TEST_CASE("path_amplitude includes per-slit weights") {
    const SlitSet slits({0, 1}, {Complex{2, 0}, Complex{0, 1}});
    const auto a = path_amplitude(slits, {1, 0}, {0.3, 0.9});
    const Complex expected = Complex{0, 1} * std::polar(1.0, 0.3) * Complex{2, 0};
    CHECK(std::abs(a - expected) < 1e-15);
}

TEST_CASE("joint_support and is_diagonal") {
    CHECK(joint_support({{0, 0}, {0, 0}}) == std::vector<int>{0});
    CHECK(joint_support({{0, 1}, {1, 0}}) == std::vector<int>{0, 1});
    CHECK(joint_support({{0, 1}, {2, 2}}) == std::vector<int>{0, 1, 2});
    CHECK(is_diagonal({{0, 1}, {0, 1}}));
    CHECK_FALSE(is_diagonal({{0, 1}, {1, 0}}));
    CHECK_FALSE(is_diagonal({{0, 0}, {0, 1}}));
    CHECK_THROWS_AS(is_diagonal({{0, 1}, {0}}), DomainError);
}

TEST_CASE("joint support never exceeds 2M") {
    for (std::size_t m = 1; m <= 3; ++m) {
        const auto slits = SlitSet::contiguous(2 * m + 2);
        const auto paths = collect(slits, m);
        std::size_t largest = 0;
        for (std::size_t i = 0; i < paths.size(); ++i)
            for (const auto& bra : paths)
                largest = std::max(largest, joint_support({paths[i], bra}).size());
        CHECK(largest == 2 * m);
    }
}

TEST_CASE("sum over all pairs equals the squared coherent path sum") {
    std::mt19937_64 rng(11);
    for (std::size_t m = 1; m <= 3; ++m) {
        for (std::size_t n = 1; n <= 4; ++n) {
            const auto slits = SlitSet::contiguous(n);
            const auto phases = random_phases(rng, m);
            Complex coherent{};
            for (const auto& p : enumerate_paths(slits, m)) coherent += path_amplitude(slits, p, phases);
            const auto tally = reduce_pairs(slits, phases, PairSelection::all);
            CHECK(tally.sum.real() == doctest::Approx(std::norm(coherent)).epsilon(1e-12));
            CHECK(std::abs(tally.sum.imag()) < 1e-10);
            CHECK(tally.count == saturating_pow(n, 2 * m));
        }
    }
}

TEST_CASE("diagonal pairs with full support count the surjections") {
    for (int m = 1; m <= 4; ++m) {
        for (int n = 1; n <= 5; ++n) {
            const auto slits = SlitSet::contiguous(n);
            const auto tally = reduce_pairs(slits, DetectorPhases(std::vector<double>(m, 0.4)),
                                            PairSelection::exact_support_diagonal);
            CHECK(static_cast<long long>(tally.count) == surjections(m, n));
            CHECK(tally.sum.real() == doctest::Approx(surjections(m, n)));
        }
    }
}

TEST_CASE("off-diagonal exact-support pairs match a literal pair loop") {
    const auto slits = SlitSet::contiguous(3);
    const DetectorPhases phases{0.4, 1.3};
    const auto paths = collect(slits, 2);
    Complex expected{};
    for (const auto& ket : paths)
        for (const auto& bra : paths)
            if (!is_diagonal({ket, bra}) && joint_support({ket, bra}).size() == 3)
                expected += path_amplitude(slits, ket, phases) * std::conj(path_amplitude(slits, bra, phases));
    const auto tally = reduce_pairs(slits, phases, PairSelection::exact_support_offdiagonal);
    CHECK(std::abs(tally.sum - expected) < 1e-12);
}

TEST_CASE("pair reduction is independent of the partitioning") {
    const auto slits = SlitSet::contiguous(5);
    const DetectorPhases phases{0.31, 2.2, 4.05};
    for (auto selection : {PairSelection::all, PairSelection::exact_support_offdiagonal}) {
        PairReductionOptions one;
        one.threads = 1;
        const auto reference = reduce_pairs(slits, phases, selection, one);
        for (std::size_t threads : {2u, 3u, 7u, 16u}) {
            PairReductionOptions opts;
            opts.threads = threads;
            const auto tally = reduce_pairs(slits, phases, selection, opts);
            CHECK(tally.count == reference.count);
            const double scale = std::max(1.0, std::abs(reference.sum));
            CHECK(std::abs(tally.sum - reference.sum) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("support-bucketed and direct reductions agree") {
    std::mt19937_64 rng(5);
    const SlitSet weighted({0, 1, 3, 4}, {Complex{1, 0}, Complex{0.8, 0.1}, Complex{1.2, -0.3}, Complex{0.5, 0.5}});
    for (const auto& slits : {SlitSet::contiguous(3), SlitSet::contiguous(5), weighted}) {
        for (std::size_t m = 1; m <= 3; ++m) {
            const auto phases = random_phases(rng, m);
            for (auto selection : {PairSelection::all, PairSelection::diagonal,
                                   PairSelection::exact_support_offdiagonal,
                                   PairSelection::exact_support_diagonal}) {
                const auto direct = reduce_pairs(slits, phases, selection);
                const auto bucketed = reduce_pairs_bucketed(slits, phases, selection);
                CHECK(direct.count == bucketed.count);
                const double scale = std::max(1.0, std::abs(direct.sum));
                CHECK(std::abs(direct.sum - bucketed.sum) <= 1e-11 * scale);
            }
        }
    }
}

TEST_CASE("pair budget is enforced") {
    PairReductionOptions opts;
    opts.budget.max_pairs = 1000;
    CHECK_THROWS_AS(reduce_pairs(SlitSet::contiguous(6), {0.0, 0.0}, PairSelection::all, opts),
                    EnumerationLimitError);
    opts.budget.max_path_table = 10;
    CHECK_THROWS_AS(reduce_pairs_bucketed(SlitSet::contiguous(6), {0.0, 0.0}, PairSelection::all, opts),
                    EnumerationLimitError);
}
