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

#include "riskshap/shapley.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "riskshap/detail/parallel.hpp"
#include "riskshap/detail/rng.hpp"

namespace riskshap {

namespace {

// Largest n for which all 2^n coalition values are tabulated up front (32 MB
// of doubles at n = 22). Beyond that the subset path re-evaluates v directly.
constexpr int table_limit = 22;

std::vector<double> tabulate_values(const Game& game, int threads) {
    const int n = game.players();
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<double> table(count);
    detail::parallel_for(0, static_cast<std::int64_t>(count), threads, [&](std::int64_t m) {
        table[static_cast<std::uint64_t>(m)] =
            game.value(Coalition::from_mask(static_cast<std::uint64_t>(m)));
    });
    return table;
}

// Subset weights w[k] = 1 / (n * C(n-1, k)).
std::vector<double> subset_weights(int n) {
    std::vector<double> w(static_cast<std::size_t>(n));
    double binom = 1.0;  // C(n-1, 0)
    for (int k = 0; k < n; ++k) {
        w[static_cast<std::size_t>(k)] = 1.0 / (static_cast<double>(n) * binom);
        binom = binom * static_cast<double>(n - 1 - k) / static_cast<double>(k + 1);
    }
    return w;
}

Allocation finish_exact(std::vector<double> values, double grand) {
    Allocation out;
    out.values = std::move(values);
    out.grand_value = grand;
    out.residual = grand - std::accumulate(out.values.begin(), out.values.end(), 0.0);
    return out;
}

}  // namespace

Allocation shapley_exact_subsets(const Game& game, int limit, int threads) {
    const int n = game.players();
    if (n > limit)
        throw PlayerLimitExceeded("subset enumeration limited to " + std::to_string(limit) +
                                  " players, got " + std::to_string(n));

    const std::vector<double> weights = subset_weights(n);
    std::vector<double> values(static_cast<std::size_t>(n), 0.0);

    if (n <= table_limit) {
        const std::vector<double> table = tabulate_values(game, threads);
        detail::parallel_for(0, n, threads, [&](std::int64_t i) {
            const std::uint64_t bit = std::uint64_t{1} << i;
            const std::uint64_t others = Coalition::full(n).mask() & ~bit;
            double acc = 0.0;
            // Enumerate every submask of `others`, including the empty set.
            std::uint64_t s = others;
            for (;;) {
                acc += weights[static_cast<std::size_t>(std::popcount(s))] *
                       (table[s | bit] - table[s]);
                if (s == 0) break;
                s = (s - 1) & others;
            }
            values[static_cast<std::size_t>(i)] = acc;
        });
        return finish_exact(std::move(values), table[Coalition::full(n).mask()]);
    }

    detail::parallel_for(0, n, threads, [&](std::int64_t i) {
        const std::uint64_t others = Coalition::full(n).mask() & ~(std::uint64_t{1} << i);
        double acc = 0.0;
        std::uint64_t s = others;
        for (;;) {
            const Coalition without = Coalition::from_mask(s);
            acc += weights[static_cast<std::size_t>(std::popcount(s))] *
                   (game.value(without.with(static_cast<int>(i))) - game.value(without));
            if (s == 0) break;
            s = (s - 1) & others;
        }
        values[static_cast<std::size_t>(i)] = acc;
    });
    return finish_exact(std::move(values), game.grand_value());
}

Allocation shapley_exact_permutations(const Game& game, int limit) {
    const int n = game.players();
    if (n > limit)
        throw PlayerLimitExceeded("permutation enumeration limited to " + std::to_string(limit) +
                                  " players, got " + std::to_string(n));

    const std::vector<double> table = tabulate_values(game, 1);
    std::vector<double> values(static_cast<std::size_t>(n), 0.0);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);

    std::uint64_t permutations = 0;
    do {
        std::uint64_t prefix = 0;
        for (int pos = 0; pos < n; ++pos) {
            const int player = order[static_cast<std::size_t>(pos)];
            const std::uint64_t with = prefix | (std::uint64_t{1} << player);
            values[static_cast<std::size_t>(player)] += table[with] - table[prefix];
            prefix = with;
        }
        ++permutations;
    } while (std::next_permutation(order.begin(), order.end()));

    for (double& v : values) v /= static_cast<double>(permutations);
    return finish_exact(std::move(values), table[Coalition::full(n).mask()]);
}

std::pair<double, double> shapley_two_player(double v1, double v2, double v12) {
    return {0.5 * (v12 + v1 - v2), 0.5 * (v12 + v2 - v1)};
}

Allocation shapley_monte_carlo(const Game& game, const McConfig& cfg, int threads) {
    if (cfg.sample_size < 1) throw InvalidConfig("Monte Carlo sample_size must be >= 1");

    const int n = game.players();
    const std::uint64_t m_samples = cfg.sample_size;
    std::vector<double> values(static_cast<std::size_t>(n), 0.0);
    std::vector<double> stderrs(static_cast<std::size_t>(n), 0.0);

    detail::parallel_for(0, n, threads, [&](std::int64_t i) {
        std::mt19937_64 gen =
            detail::substream(cfg.seed, static_cast<std::uint64_t>(i));
        std::vector<int> others;
        others.reserve(static_cast<std::size_t>(n - 1));
        for (int p = 0; p < n; ++p)
            if (p != i) others.push_back(p);

        double sum = 0.0;
        double sum_sq = 0.0;
        for (std::uint64_t draw = 0; draw < m_samples; ++draw) {
            const std::uint64_t k = detail::uniform_below(gen, static_cast<std::uint64_t>(n));
            // Partial Fisher-Yates: the first k entries form a uniform
            // k-subset of N\{i} regardless of the array's prior order.
            std::uint64_t mask = 0;
            for (std::uint64_t j = 0; j < k; ++j) {
                const std::uint64_t pick =
                    j + detail::uniform_below(gen, static_cast<std::uint64_t>(n - 1) - j);
                std::swap(others[j], others[pick]);
                mask |= std::uint64_t{1} << others[j];
            }
            const Coalition without = Coalition::from_mask(mask);
            const double marginal =
                game.value(without.with(static_cast<int>(i))) - game.value(without);
            sum += marginal;
            sum_sq += marginal * marginal;
        }

        const double mean = sum / static_cast<double>(m_samples);
        values[static_cast<std::size_t>(i)] = mean;
        if (m_samples > 1) {
            const double ss = std::max(0.0, sum_sq - static_cast<double>(m_samples) * mean * mean);
            const double sample_var = ss / static_cast<double>(m_samples - 1);
            stderrs[static_cast<std::size_t>(i)] =
                std::sqrt(sample_var / static_cast<double>(m_samples));
        }
    });

    Allocation out = finish_exact(std::move(values), game.grand_value());
    if (cfg.stderr_requested) out.std_errors = std::move(stderrs);
    return out;
}

Allocation transfer_sqrt_approx(const Allocation& alloc_sq, double grand_sigma) {
    if (!(grand_sigma > 0.0))
        throw DegenerateGrandValue("square-game transfer needs a positive grand value");

    Allocation out;
    out.values.reserve(alloc_sq.values.size());
    for (double v : alloc_sq.values) out.values.push_back(v / grand_sigma);
    out.grand_value = grand_sigma;
    out.residual =
        grand_sigma - std::accumulate(out.values.begin(), out.values.end(), 0.0);
    if (alloc_sq.std_errors) {
        std::vector<double> scaled;
        scaled.reserve(alloc_sq.std_errors->size());
        for (double s : *alloc_sq.std_errors) scaled.push_back(s / grand_sigma);
        out.std_errors = std::move(scaled);
    }
    return out;
}

}  // namespace riskshap
