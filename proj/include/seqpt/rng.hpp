// Copyright 2026 The SEQPT Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace seqpt {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of shot `index` under `master`. Shot streams are independent of execution order.
inline constexpr std::uint64_t shot_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 0x5EC0DE));
}

/// Random source for one shot. mt19937_64 output is fixed by the standard, and the draws below avoid
/// the implementation-defined std distributions, so sequences match across platforms.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng for_shot(std::uint64_t master, std::uint64_t index) { return Rng(shot_seed(master, index)); }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v = 0;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// n independent fair bits, packed low to high.
    std::uint64_t bits(unsigned n) {
        const std::uint64_t v = engine_();
        return n >= 64 ? v : v & ((std::uint64_t{1} << n) - 1);
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace seqpt
