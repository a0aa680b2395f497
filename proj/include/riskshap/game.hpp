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

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "riskshap/errors.hpp"

namespace riskshap {

/// A coalition of players, stored as a 64-bit membership mask. Membership
/// tests, singleton unions, and complements are single bit operations, which
/// is what makes subset enumeration over 2^n masks affordable.
class Coalition {
public:
    static constexpr int max_players = 64;

    constexpr Coalition() = default;

    static constexpr Coalition empty() { return Coalition{}; }

    static constexpr Coalition full(int n) {
        return Coalition{n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
    }

    static constexpr Coalition singleton(int player) {
        return Coalition{std::uint64_t{1} << player};
    }

    static constexpr Coalition from_mask(std::uint64_t mask) { return Coalition{mask}; }

    constexpr std::uint64_t mask() const { return bits_; }
    constexpr bool is_empty() const { return bits_ == 0; }
    constexpr bool contains(int player) const { return (bits_ >> player) & 1u; }
    constexpr Coalition with(int player) const { return Coalition{bits_ | (std::uint64_t{1} << player)}; }
    constexpr Coalition without(int player) const { return Coalition{bits_ & ~(std::uint64_t{1} << player)}; }
    constexpr Coalition complement(int n) const { return Coalition{full(n).bits_ & ~bits_}; }
    constexpr Coalition unite(Coalition other) const { return Coalition{bits_ | other.bits_}; }
    constexpr Coalition intersect(Coalition other) const { return Coalition{bits_ & other.bits_}; }
    constexpr Coalition minus(Coalition other) const { return Coalition{bits_ & ~other.bits_}; }

    int size() const { return std::popcount(bits_); }

    /// Invokes fn(player) for each member in ascending index order.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::uint64_t m = bits_; m != 0; m &= m - 1) {
            fn(std::countr_zero(m));
        }
    }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for_each([&](int p) { out.push_back(p); });
        return out;
    }

    friend constexpr bool operator==(Coalition a, Coalition b) { return a.bits_ == b.bits_; }

private:
    constexpr explicit Coalition(std::uint64_t bits) : bits_(bits) {}

    std::uint64_t bits_ = 0;
};

/// A coalitional game: a player count and a characteristic function with
/// v(empty) == 0. The characteristic function must be deterministic and safe
/// to evaluate concurrently; engines may call it from several threads.
class Game {
public:
    Game(int n, std::function<double(Coalition)> v) : n_(n), v_(std::move(v)) {
        if (n_ < 1) throw InvalidGame("game needs at least one player");
        if (n_ > Coalition::max_players)
            throw PlayerLimitExceeded("game exceeds the 64-player coalition mask");
        if (!v_) throw InvalidGame("characteristic function is empty");
        if (v_(Coalition::empty()) != 0.0)
            throw InvalidGame("characteristic function must vanish on the empty coalition");
    }

    int players() const { return n_; }
    double value(Coalition s) const { return v_(s); }
    double grand_value() const { return v_(Coalition::full(n_)); }

private:
    int n_;
    std::function<double(Coalition)> v_;
};

/// Per-player attribution of a game's grand-coalition value. `residual` is
/// grand_value minus the sum of `values`; for exact methods it is rounding
/// noise, for Monte Carlo it is sampling noise. `std_errors` is populated by
/// the Monte Carlo estimator when requested.
struct Allocation {
    std::vector<double> values;
    double grand_value = 0.0;
    double residual = 0.0;
    std::optional<std::vector<double>> std_errors;
};

/// Monte Carlo estimator configuration. `sample_size` is the per-player
/// number of sampled marginal contributions.
struct McConfig {
    std::uint64_t sample_size = 100000;
    std::uint64_t seed = 0;
    bool stderr_requested = false;
};

}  // namespace riskshap
