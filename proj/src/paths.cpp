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


#include "multislit/paths.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "multislit/error.hpp"
#include "multislit/numeric.hpp"

namespace multislit {
namespace {

void require_mask_capacity(const SlitSet& slits) {
    if (slits.size() > 63) throw RangeError("pair reductions support at most 63 slits");
}

// phasors[i * N + s] = w_s * exp(i * label_s * delta_i)
std::vector<Complex> detector_phasors(const SlitSet& slits, const DetectorPhases& phases) {
    const std::size_t n = slits.size();
    std::vector<Complex> phasors(phases.size() * n);
    for (std::size_t i = 0; i < phases.size(); ++i)
        for (std::size_t s = 0; s < n; ++s)
            phasors[i * n + s] = slits.weight(s) * std::polar(1.0, slits.label(s) * phases[i]);
    return phasors;
}

struct PathTable {
    std::vector<Complex> amplitude;
    std::vector<std::uint64_t> support;
};

// Every path in lexicographic order with its amplitude and support bitmask.
PathTable tabulate_paths(const SlitSet& slits, const DetectorPhases& phases,
                         std::uint64_t path_count) {
    const std::size_t n = slits.size();
    const std::size_t m = phases.size();
    const auto phasors = detector_phasors(slits, phases);

    PathTable table;
    table.amplitude.resize(path_count);
    table.support.resize(path_count);
    std::vector<std::size_t> digits(m, 0);
    for (std::uint64_t index = 0; index < path_count; ++index) {
        Complex amp{1.0, 0.0};
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < m; ++i) {
            amp *= phasors[i * n + digits[i]];
            mask |= std::uint64_t{1} << digits[i];
        }
        table.amplitude[index] = amp;
        table.support[index] = mask;
        for (std::size_t i = m; i-- > 0;) {
            if (++digits[i] < n) break;
            digits[i] = 0;
        }
    }
    return table;
}

std::uint64_t checked_path_count(const SlitSet& slits, std::size_t particles,
                                 std::uint64_t limit, const char* what) {
    const std::uint64_t count = saturating_pow(slits.size(), static_cast<unsigned>(particles));
    if (count > limit) throw EnumerationLimitError(slits.size(), particles, what);
    return count;
}

}  // namespace

PathRange::iterator::iterator(std::span<const int> labels, std::size_t particles)
    : labels_(labels), digits_(particles, 0), done_(labels.empty() || particles == 0) {
    if (!done_) current_ = MultiPath(std::vector<int>(particles, labels_[0]));
}

PathRange::iterator& PathRange::iterator::operator++() {
    std::vector<int> next(current_.slits().begin(), current_.slits().end());
    for (std::size_t i = digits_.size(); i-- > 0;) {
        if (++digits_[i] < labels_.size()) {
            next[i] = labels_[digits_[i]];
            current_ = MultiPath(std::move(next));
            return *this;
        }
        digits_[i] = 0;
        next[i] = labels_[0];
    }
    done_ = true;
    return *this;
}

PathRange::PathRange(SlitSet slits, std::size_t particles)
    : slits_(std::move(slits)), particles_(particles) {}

std::uint64_t PathRange::count() const noexcept {
    return saturating_pow(slits_.size(), static_cast<unsigned>(particles_));
}

PathRange enumerate_paths(const SlitSet& slits, std::size_t particles,
                          const EnumerationBudget& budget) {
    if (particles == 0) throw DomainError("paths need at least one particle");
    checked_path_count(slits, particles, budget.max_paths, "path enumeration exceeds budget");
    return PathRange(slits, particles);
}

Complex path_amplitude(const SlitSet& slits, const MultiPath& path, const DetectorPhases& phases) {
    if (path.size() != phases.size())
        throw DomainError("path length must equal the number of detectors");
    Complex amp{1.0, 0.0};
    for (std::size_t i = 0; i < path.size(); ++i) {
        const long pos = slits.position_of(path[i]);
        if (pos < 0) throw DomainError("path uses a slit outside the slit set");
        amp *= slits.weight(static_cast<std::size_t>(pos)) * std::polar(1.0, path[i] * phases[i]);
    }
    return amp;
}

std::vector<int> joint_support(const PathPair& pair) {
    if (pair.ket.size() != pair.bra.size())
        throw DomainError("bra and ket paths must have equal length");
    std::vector<int> support(pair.ket.slits().begin(), pair.ket.slits().end());
    support.insert(support.end(), pair.bra.slits().begin(), pair.bra.slits().end());
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    return support;
}

bool is_diagonal(const PathPair& pair) {
    if (pair.ket.size() != pair.bra.size())
        throw DomainError("bra and ket paths must have equal length");
    return pair.ket == pair.bra;
}

PairTally reduce_pairs(const SlitSet& slits, const DetectorPhases& phases, PairSelection selection,
                       const PairReductionOptions& options) {
    require_mask_capacity(slits);
    const std::size_t m = phases.size();
    const std::uint64_t pair_count =
        saturating_pow(slits.size(), static_cast<unsigned>(2 * m));
    if (pair_count > options.budget.max_pairs)
        throw EnumerationLimitError(slits.size(), m, "path-pair enumeration exceeds budget");
    const std::uint64_t path_count = saturating_pow(slits.size(), static_cast<unsigned>(m));
    const PathTable table = tabulate_paths(slits, phases, path_count);
    const std::uint64_t full = slits.full_mask();

    struct Partial {
        CompensatedComplexSum sum;
        std::uint64_t count = 0;
    };
    auto chunk = [&](std::size_t begin, std::size_t end) {
        Partial partial;
        for (std::size_t k = begin; k < end; ++k) {
            const std::uint64_t ket_mask = table.support[k];
            Complex row{};
            std::uint64_t row_count = 0;
            switch (selection) {
                case PairSelection::all:
                    for (std::size_t b = 0; b < path_count; ++b) row += std::conj(table.amplitude[b]);
                    row_count = path_count;
                    break;
                case PairSelection::diagonal:
                    row = std::conj(table.amplitude[k]);
                    row_count = 1;
                    break;
                case PairSelection::exact_support_offdiagonal:
                    for (std::size_t b = 0; b < path_count; ++b) {
                        if (b != k && (ket_mask | table.support[b]) == full) {
                            row += std::conj(table.amplitude[b]);
                            ++row_count;
                        }
                    }
                    break;
                case PairSelection::exact_support_diagonal:
                    if (ket_mask == full) {
                        row = std::conj(table.amplitude[k]);
                        row_count = 1;
                    }
                    break;
            }
            partial.sum += table.amplitude[k] * row;
            partial.count += row_count;
        }
        return partial;
    };

    const auto partials = parallel_chunks(path_count, options.threads, chunk);
    CompensatedComplexSum total;
    PairTally tally;
    for (const auto& p : partials) {
        total += p.sum;
        tally.count += p.count;
    }
    tally.sum = total.value();
    return tally;
}

PairTally reduce_pairs_bucketed(const SlitSet& slits, const DetectorPhases& phases,
                                PairSelection selection, const PairReductionOptions& options) {
    require_mask_capacity(slits);
    const std::size_t n = slits.size();
    const std::size_t m = phases.size();
    if (n > 20) throw EnumerationLimitError(n, m, "support-bucketed reduction supports N <= 20");
    const std::uint64_t path_count =
        checked_path_count(slits, m, options.budget.max_path_table, "path table exceeds budget");
    const PathTable table = tabulate_paths(slits, phases, path_count);

    const std::size_t classes = std::size_t{1} << n;
    std::vector<CompensatedComplexSum> amp_by_support(classes);
    std::vector<CompensatedSum> intensity_by_support(classes);
    std::vector<std::uint64_t> paths_by_support(classes, 0);
    for (std::uint64_t p = 0; p < path_count; ++p) {
        const auto s = table.support[p];
        amp_by_support[s] += table.amplitude[p];
        intensity_by_support[s] += std::norm(table.amplitude[p]);
        ++paths_by_support[s];
    }
    const std::uint64_t full = slits.full_mask();

    PairTally tally;
    switch (selection) {
        case PairSelection::all: {
            CompensatedComplexSum total;
            for (std::size_t s = 0; s < classes; ++s) total += amp_by_support[s];
            tally.sum = std::norm(total.value());
            tally.count = path_count * path_count;
            break;
        }
        case PairSelection::diagonal: {
            CompensatedSum total;
            for (std::size_t s = 0; s < classes; ++s) total += intensity_by_support[s];
            tally.sum = total.value();
            tally.count = path_count;
            break;
        }
        case PairSelection::exact_support_offdiagonal: {
            // bra support must contain every slit the ket misses: bra = missing | (subset of ket)
            CompensatedComplexSum total;
            for (std::uint64_t ket = 1; ket < classes; ++ket) {
                if (paths_by_support[ket] == 0) continue;
                const Complex ket_amp = amp_by_support[ket].value();
                const std::uint64_t missing = full & ~ket;
                Complex row{};
                std::uint64_t sub = ket;
                while (true) {
                    const std::uint64_t bra = missing | sub;
                    if (paths_by_support[bra] != 0) {
                        row += std::conj(amp_by_support[bra].value());
                        tally.count += paths_by_support[ket] * paths_by_support[bra];
                    }
                    if (sub == 0) break;
                    sub = (sub - 1) & ket;
                }
                total += ket_amp * row;
            }
            total += Complex{-intensity_by_support[full].value(), 0.0};
            tally.sum = total.value();
            tally.count -= paths_by_support[full];
            break;
        }
        case PairSelection::exact_support_diagonal:
            tally.sum = intensity_by_support[full].value();
            tally.count = paths_by_support[full];
            break;
    }
    return tally;
}

}  // namespace multislit
