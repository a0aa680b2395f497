// Copyright 2026 The riskshap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace riskshap::detail {

// All randomness in the library flows through mt19937_64 substreams seeded by
// splitmix64 mixing of (user seed, stream index). Sampling primitives below
// consume raw 64-bit draws directly, so results are bit-identical across
// platforms and independent of the standard library's distribution code.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Independent substream for (seed, stream_index); stream 0, 1, ... are used
/// for per-player Monte Carlo loops so results do not depend on thread count.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream_index) {
    std::uint64_t s = seed;
    splitmix64(s);
    s ^= 0xD1B54A32D192ED03ULL * (stream_index + 1);
    return std::mt19937_64(splitmix64(s));
}

/// Uniform integer in [0, bound) by rejection; bound must be >= 1.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
        const std::uint64_t r = gen();
        if (r >= threshold) return r % bound;
    }
}

/// Uniform double in (0, 1], 53-bit resolution.
inline double uniform_unit(std::mt19937_64& gen) {
    return static_cast<double>((gen() >> 11) + 1) * 0x1.0p-53;
}

/// Standard normal via Box-Muller; stateless beyond the generator, two draws
/// per pair of variates.
class NormalSampler {
public:
    double operator()(std::mt19937_64& gen) {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_unit(gen);
        const double u2 = uniform_unit(gen);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace riskshap::detail
