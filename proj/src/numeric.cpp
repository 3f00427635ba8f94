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


#include "multislit/numeric.hpp"

#include <limits>
#include <string>

#include "multislit/error.hpp"

namespace multislit {

std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    __extension__ using u128 = unsigned __int128;
    u128 c = 1;
    for (unsigned i = 1; i <= k; ++i) {
        // c * (n - k + i) / i is exact at every step
        c = c * (n - k + i) / i;
        if (c > std::numeric_limits<std::uint64_t>::max())
            throw RangeError("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                             ") overflows 64 bits");
    }
    return static_cast<std::uint64_t>(c);
}

std::uint64_t saturating_pow(std::uint64_t base, unsigned exponent) noexcept {
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t result = 1;
    for (unsigned i = 0; i < exponent; ++i) {
        if (base != 0 && result > max / base) return max;
        result *= base;
    }
    return result;
}

}  // namespace multislit
