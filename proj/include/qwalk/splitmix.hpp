// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QWALK_SPLITMIX_HPP
#define QWALK_SPLITMIX_HPP

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace qwalk {

/// SplitMix64 generator. Every random draw in the project goes through this
/// so results are identical across platforms and standard libraries.
class SplitMix64 {
   public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {
    }

    uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound). Rejects draws at or above the largest
    /// multiple of `bound` representable in 64 bits, then reduces modulo.
    uint64_t uniform_below(uint64_t bound) {
        // 2^64 mod bound == (-bound) mod bound in unsigned arithmetic.
        const uint64_t excess = (0 - bound) % bound;
        const uint64_t limit = 0 - excess;  // 2^64 - excess, wraps to 0 when excess == 0
        while (true) {
            uint64_t r = next();
            if (excess == 0 || r < limit) {
                return r % bound;
            }
        }
    }

    /// Uniform real in [0, 1) from the top 53 bits.
    double uniform_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

   private:
    uint64_t state_;
};

/// Fisher-Yates shuffle of 0..n-1, swapping from the back.
inline std::vector<std::size_t> shuffled_indices(std::size_t n, uint64_t seed) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    SplitMix64 rng(seed);
    for (std::size_t i = n; i > 1; i--) {
        std::size_t j = static_cast<std::size_t>(rng.uniform_below(i));
        std::swap(idx[i - 1], idx[j]);
    }
    return idx;
}

}  // namespace qwalk

#endif
