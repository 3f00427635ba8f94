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

#include <bit>
#include <cmath>
#include <numbers>

#include "multislit/correlation.hpp"
#include "multislit/error.hpp"
#include "multislit/numeric.hpp"
#include "multislit/sensitivity.hpp"

using namespace multislit;
constexpr double pi = std::numbers::pi;

namespace {

// C(M) * (2M+1)^(M-1) is the integer sum_k binom(2M+1, k) k^(M-1).
double exact_c(unsigned m) {
    const unsigned n = 2 * m + 1;
    unsigned __int128 numerator = 0;
    unsigned __int128 denominator = 1;
    for (unsigned i = 0; i + 1 < m; ++i) denominator *= n;
    for (unsigned k = 1; k <= n; ++k) {
        unsigned __int128 term = binomial(n, k);
        for (unsigned i = 0; i + 1 < m; ++i) term *= k;
        numerator += term;
    }
    const unsigned __int128 whole = numerator / denominator;
    const unsigned __int128 rest = numerator % denominator;
    return static_cast<double>(whole) +
           static_cast<double>(static_cast<long double>(rest) / static_cast<long double>(denominator));
}

// First-order propagation by explicit gradient over every slit combination X:
// d kappa / d Delta_X = (-1)^(N-|X|) M G1_X^(M-1) / G1_N^M.
double gradient_rms(unsigned m, double draw_rms, bool coherent) {
    const unsigned n = 2 * m + 1;
    auto g1 = [coherent](unsigned k) { return coherent ? double(k) * k : double(k); };
    const double peak = std::pow(g1(n), m);
    double variance = 0.0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        const unsigned k = std::popcount(mask);
        const double grad = m * std::pow(g1(k), m - 1.0) / peak;
        variance += grad * grad * draw_rms * draw_rms;
    }
    return std::sqrt(variance);
}

}  // namespace

TEST_CASE("Sorkin parameter vanishes under Born's rule") {
    for (const auto& phases : random_phase_draws(1, 50, 21))
        CHECK(std::abs(sorkin(1, phases)) < 1e-12);
    for (double delta : linear_grid(0.0, 2 * pi, 33))
        CHECK(std::abs(sorkin(2, preset_fixed_scan(2, delta))) < 1e-10);
    for (std::size_t m = 1; m <= 3; ++m)
        for (const auto& phases : random_phase_draws(m, 10, 50 + m))
            CHECK(std::abs(sorkin(m, phases)) < 1e-10);
}

TEST_CASE("Sorkin parameter stays zero for perturbed slit amplitudes") {
    // Born's rule holds for any amplitudes, so a weight change alone cannot produce kappa != 0
    const SlitSet perturbed({0, 1, 2}, {Complex{1.01, 0}, Complex{1, 0}, Complex{1, 0}});
    CHECK(std::abs(sorkin(1, {0.0}, perturbed)) < 1e-12);
    // a genuine deviation in one slit-combination term does
    DeviationModel model;
    model.magnitude = 0.01;
    CHECK(*deviation_montecarlo(1, model, 1).mc_rms > 0.0);
}

TEST_CASE("Sorkin parameter checks its slit count") {
    CHECK_THROWS_AS(sorkin(2, {0.0, 0.0}, SlitSet::contiguous(4)), DomainError);
}

TEST_CASE("C(M) anchors and exact values") {
    CHECK(sensitivity_C(1) == 7.0);
    CHECK(sensitivity_C(2) == 16.0);
    CHECK(sensitivity_C(3) == doctest::Approx(256.0 / 7.0).epsilon(1e-15));
    for (unsigned m = 1; m <= 11; ++m)
        CHECK(sensitivity_C(m) == doctest::Approx(exact_c(m)).epsilon(1e-14));
    CHECK_THROWS_AS(sensitivity_C(32), RangeError);
    CHECK_THROWS_AS(sensitivity_C(0), DomainError);
}

TEST_CASE("sensitivity ratio matches the reference table") {
    CHECK(sensitivity_ratio(1) == 1.0);
    const double expected[] = {1.8, 2.9, 4.7, 7.3, 11.4, 17.7, 27.6, 42.7, 66.2, 102.5};
    const auto rows = sensitivity_table(11);
    REQUIRE(rows.size() == 10);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].m == i + 2);
        CHECK(rows[i].table_row == doctest::Approx(expected[i]).epsilon(1e-12));
        CHECK(std::abs(rows[i].ratio - expected[i]) <= 0.05);
        if (i > 0) CHECK(rows[i].ratio > rows[i - 1].ratio);
    }
    CHECK(sensitivity_table(2).size() == 1);
    CHECK_THROWS_AS(sensitivity_table(1), DomainError);
}

TEST_CASE("linearized deviation") {
    CHECK(deviation_linearized(1, 0.0) == 0.0);
    CHECK(deviation_linearized(1, 0.01) == doctest::Approx(std::sqrt(7.0) * 0.01 / 9.0));
    const double r1 = deviation_linearized(2, 1e-3) / deviation_linearized(1, 1e-3);
    const double r2 = deviation_linearized(2, 5e-2) / deviation_linearized(1, 5e-2);
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-14));
    CHECK_THROWS_AS(deviation_linearized(1, -1.0), DomainError);
}

TEST_CASE("propagated RMS matches the per-combination gradient") {
    for (unsigned m = 1; m <= 4; ++m) {
        CHECK(propagated_rms(m, 1e-3, PeakConvention::coherent) ==
              doctest::Approx(gradient_rms(m, 1e-3, true)).epsilon(1e-12));
        CHECK(propagated_rms(m, 1e-3, PeakConvention::linear) ==
              doctest::Approx(gradient_rms(m, 1e-3, false)).epsilon(1e-12));
    }
    // squared prefactors for M = 2 under the linear peak convention: sqrt(9.6)
    CHECK(propagated_rms(2, 1.0, PeakConvention::linear) == doctest::Approx(2 * std::sqrt(9.6) / 5));
}

TEST_CASE("Monte-Carlo single-particle RMS follows sqrt(7)") {
    DeviationModel model;
    model.magnitude = 1e-3;
    const auto report = deviation_montecarlo(1, model, 100000);
    const double scaled = *report.mc_rms * 9.0 / model.draw_rms();
    CHECK(std::abs(scaled / std::sqrt(7.0) - 1.0) < 0.03);
    CHECK(*report.mc_prediction * 9.0 / model.draw_rms() == doctest::Approx(std::sqrt(7.0)));
    CHECK(report.warnings.empty());
}

TEST_CASE("Monte-Carlo two-particle RMS follows the squared-prefactor law") {
    for (auto law : {DeviationLaw::uniform_symmetric, DeviationLaw::gaussian}) {
        DeviationModel model;
        model.magnitude = 1e-3;
        model.law = law;
        const auto report = deviation_montecarlo(2, model, 100000);
        CHECK(std::abs(*report.mc_rms / *report.mc_prediction - 1.0) < 0.03);
        CHECK(std::abs(*report.mc_rms_linear_peak / *report.mc_prediction_linear_peak - 1.0) < 0.03);
    }
}

TEST_CASE("Monte-Carlo with zero deviation") {
    DeviationModel model;
    model.magnitude = 0.0;
    const auto report = deviation_montecarlo(1, model, 2000);
    CHECK(*report.mc_rms < 1e-15);
}

TEST_CASE("Monte-Carlo RMS is linear in the deviation magnitude") {
    for (std::size_t m : {1u, 2u}) {
        std::vector<double> deltas{1e-4, 1e-3, 1e-2};
        std::vector<double> rms;
        for (double d : deltas) {
            DeviationModel model;
            model.magnitude = d;
            rms.push_back(*deviation_montecarlo(m, model, 20000).mc_rms);
        }
        CHECK(fit_line(deltas, rms).r_squared > 0.999);
    }
}

TEST_CASE("Monte-Carlo results do not depend on the thread count") {
    DeviationModel model;
    model.seed = 99;
    MonteCarloOptions one;
    one.threads = 1;
    MonteCarloOptions many;
    many.threads = 5;
    const auto a = deviation_montecarlo(2, model, 3000, one);
    const auto b = deviation_montecarlo(2, model, 3000, many);
    CHECK(*a.mc_rms == *b.mc_rms);
    model.seed = 100;
    CHECK(*deviation_montecarlo(2, model, 3000, one).mc_rms != *a.mc_rms);
}

TEST_CASE("Monte-Carlo warnings") {
    DeviationModel model;
    model.magnitude = 0.2;
    const auto report = deviation_montecarlo(1, model, 10);
    CHECK(report.warnings.size() == 3);
}

TEST_CASE("exponent deviation gives nonzero kappa that vanishes with epsilon") {
    for (std::size_t m : {1u, 2u}) {
        const auto center = preset_fixed_scan(m, 0.0);
        double previous = INFINITY;
        for (double eps : {1e-2, 1e-3, 1e-4}) {
            const double kappa = std::abs(sorkin_exponent(m, center, eps));
            CHECK(kappa > 0.0);
            CHECK(kappa < previous);
            previous = kappa;
        }
        CHECK(std::abs(sorkin_exponent(m, center, 0.0)) < 1e-12);
    }
    DeviationModel model;
    model.variant = DeviationModel::Variant::exponent_epsilon;
    model.epsilon = 1e-3;
    CHECK(*deviation_montecarlo(2, model, 0).mc_rms > 0.0);
}

TEST_CASE("fit_line") {
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> y{3, 5, 7, 9};
    const auto fit = fit_line(x, y);
    CHECK(fit.slope == doctest::Approx(2.0));
    CHECK(fit.intercept == doctest::Approx(1.0));
    CHECK(fit.r_squared == doctest::Approx(1.0));
}

TEST_CASE("report JSON uses the stable field names") {
    DeviationModel model;
    const auto j = to_json(deviation_montecarlo(1, model, 1000));
    for (const char* key : {"m", "c_of_m", "ratio", "table_row", "mc_rms", "mc_prediction", "trials",
                            "seed", "delta", "law"})
        CHECK(j.contains(key));
    CHECK(j["law"] == "uniform");
    const auto row = to_json(sensitivity_table(2)[0]);
    CHECK(row["mc_rms"].is_null());
    CHECK(row["table_row"] == 1.8);
}
