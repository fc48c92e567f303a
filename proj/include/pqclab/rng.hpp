// Copyright 2026 The pqclab Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Splittable counter-style random generator with bit-reproducible output.
 *
 * Standard-library distributions are implementation-defined, so every
 * transform here (uniform reals, Gaussians) is spelled out explicitly.
 * A (seed, stream) pair fully determines the sample sequence on every
 * platform; Monte Carlo code derives one stream per sample or round.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace pqclab {

namespace detail {

/// SplitMix64 finalizer; bijective 64-bit mix.
inline auto mix64(std::uint64_t z) -> std::uint64_t {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace detail

class SeededRng {
  public:
    SeededRng(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream),
          // Fold the stream into the seed with two mix rounds so that nearby
          // (seed, stream) pairs start in unrelated states.
          state_(detail::mix64(detail::mix64(seed + 0x9E3779B97F4A7C15ULL) ^
                               detail::mix64(stream + 0xD1B54A32D192ED03ULL))) {}

    [[nodiscard]] auto seed() const -> std::uint64_t { return seed_; }
    [[nodiscard]] auto stream() const -> std::uint64_t { return stream_; }

    /// Next raw 64-bit word (SplitMix64 sequence).
    auto next_u64() -> std::uint64_t {
        state_ += 0x9E3779B97F4A7C15ULL;
        return detail::mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    auto next_double() -> double {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    auto next_uniform(double lo, double hi) -> double {
        return lo + (hi - lo) * next_double();
    }

    /**
     * @brief Standard normal draw via Box-Muller.
     *
     * Consumes exactly two raw words per call (the sine partner is unused) so
     * the stream position is a pure function of the call count; there is no
     * rejection loop and no cached state.
     */
    auto next_gaussian() -> double {
        // u1 in (0, 1] keeps the logarithm finite.
        const double u1 =
            (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t state_;
};

} // namespace pqclab
