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
#include <iterator>
#include <span>
#include <vector>

#include "multislit/optics.hpp"
#include "multislit/parallel.hpp"

namespace multislit {

/// Limits on brute-force enumeration sizes.
struct EnumerationBudget {
    /// N^M for a streamed path enumeration.
    std::uint64_t max_paths = 1'000'000'000;
    /// N^(2M) for the direct double loop over path pairs.
    std::uint64_t max_pairs = 1'000'000'000;
    /// N^M for reductions that tabulate every path (amplitude + support mask).
    std::uint64_t max_path_table = std::uint64_t{1} << 26;
};

/// One M-particle path: the slit label feeding each detector.
class MultiPath {
public:
    MultiPath() = default;
    explicit MultiPath(std::vector<int> assignment) : assignment_(std::move(assignment)) {}
    MultiPath(std::initializer_list<int> assignment) : assignment_(assignment) {}

    std::size_t size() const noexcept { return assignment_.size(); }
    std::span<const int> slits() const noexcept { return assignment_; }
    int operator[](std::size_t detector) const { return assignment_.at(detector); }

    auto operator<=>(const MultiPath&) const = default;

private:
    std::vector<int> assignment_;
};

struct PathPair {
    MultiPath ket;
    MultiPath bra;
};

/**
 * Lexicographic stream over all N^M paths of a slit set (detector 1 is the
 * most significant digit). Paths are generated on the fly; nothing is stored
 * beyond the current path.
 */
class PathRange {
public:
    class iterator {
    public:
        using value_type = MultiPath;
        using difference_type = std::ptrdiff_t;
        using reference = const MultiPath&;
        using pointer = const MultiPath*;
        using iterator_category = std::input_iterator_tag;

        iterator() = default;

        reference operator*() const { return current_; }
        pointer operator->() const { return &current_; }
        iterator& operator++();
        void operator++(int) { ++*this; }
        bool operator==(const iterator& other) const { return done_ == other.done_; }

    private:
        friend class PathRange;
        iterator(std::span<const int> labels, std::size_t particles);

        std::span<const int> labels_;
        std::vector<std::size_t> digits_;
        MultiPath current_;
        bool done_ = true;
    };

    PathRange(SlitSet slits, std::size_t particles);

    iterator begin() const { return iterator(slits_.labels(), particles_); }
    iterator end() const { return iterator(); }

    /// N^M, saturated at UINT64_MAX.
    std::uint64_t count() const noexcept;

private:
    SlitSet slits_;
    std::size_t particles_;
};

/// Streams every path over `slits`; throws EnumerationLimitError when N^M exceeds the budget.
PathRange enumerate_paths(const SlitSet& slits, std::size_t particles,
                          const EnumerationBudget& budget = {});

/// Product over detectors of w_s * exp(i * s * delta_i).
Complex path_amplitude(const SlitSet& slits, const MultiPath& path, const DetectorPhases& phases);

/// Sorted distinct slit labels used by either path of the pair.
std::vector<int> joint_support(const PathPair& pair);

/// True when bra and ket agree detector by detector (the classical terms).
bool is_diagonal(const PathPair& pair);

/// Which pairs a reduction sums over. "Exact support" means the pair's joint
/// support is the whole slit set.
enum class PairSelection { all, diagonal, exact_support_offdiagonal, exact_support_diagonal };

struct PairReductionOptions {
    EnumerationBudget budget{};
    std::size_t threads = default_thread_count();
};

/// Sum of amp(ket) * conj(amp(bra)) over the selected pairs, plus how many pairs contributed.
struct PairTally {
    Complex sum{};
    std::uint64_t count = 0;
};

/**
 * Brute-force double loop over all N^(2M) ordered path pairs. The outer (ket)
 * index is split across threads; each chunk's partial sum is combined in chunk
 * order.
 */
PairTally reduce_pairs(const SlitSet& slits, const DetectorPhases& phases, PairSelection selection,
                       const PairReductionOptions& options = {});

/**
 * Same sum as reduce_pairs, evaluated by first accumulating path amplitudes per
 * support mask and then pairing support classes whose union matches the
 * selection. Costs N^M + 3^N instead of N^(2M).
 */
PairTally reduce_pairs_bucketed(const SlitSet& slits, const DetectorPhases& phases,
                                PairSelection selection, const PairReductionOptions& options = {});

}  // namespace multislit
