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

#include "riskshap/game.hpp"

namespace riskshap {

inline constexpr int default_subset_limit = 20;
inline constexpr int default_permutation_limit = 10;

/// Exact Shapley value by subset enumeration:
///   Sh_i = (1/n) * sum over S in N\{i} of C(n-1,|S|)^-1 * (v(S+i) - v(S)).
/// Cost is O(n * 2^n) marginals; the characteristic function is evaluated
/// once per coalition (values are tabulated for n <= 22). Players above
/// `limit` raise PlayerLimitExceeded.
Allocation shapley_exact_subsets(const Game& game, int limit = default_subset_limit,
                                 int threads = 1);

/// Exact Shapley value by averaging marginal contributions over all n!
/// player orderings. Agrees with the subset form up to rounding; intended
/// for small n (cost O(n! * n) table lookups).
Allocation shapley_exact_permutations(const Game& game, int limit = default_permutation_limit);

/// Closed form for a two-player game with v({1})=v1, v({2})=v2, v({1,2})=v12:
///   Sh_1 = (v12 + v1 - v2)/2,  Sh_2 = (v12 + v2 - v1)/2.
std::pair<double, double> shapley_two_player(double v1, double v2, double v12);

/// Monte Carlo Shapley estimator. For each player i, `sample_size` marginal
/// contributions v(S+i) - v(S) are averaged, with S drawn by picking a size
/// k uniformly on {0,...,n-1} and then a uniformly random k-subset of N\{i}.
/// That sampling law weights each subset by C(n-1,k)^-1 / n, so the
/// estimator is unbiased for the subset-form definition. Each player draws
/// from its own (seed, player) substream, so results are bit-identical for
/// equal (seed, sample_size, n) regardless of thread count.
Allocation shapley_monte_carlo(const Game& game, const McConfig& cfg, int threads = 1);

/// Transfers an allocation of a squared game to the game itself using
///   Sh_i(sigma) ~= Sh_i(sigma^2) / sigma(N),
/// where `grand_sigma` = sigma(N) > 0. Standard errors, when present, are
/// scaled the same way.
Allocation transfer_sqrt_approx(const Allocation& alloc_sq, double grand_sigma);

}  // namespace riskshap
