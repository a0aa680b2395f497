#include <doctest.h>

#include <cmath>

#include "riskshap/shapley.hpp"
#include "test_util.hpp"

using namespace riskshap;
using testutil::rel_err;

namespace {

Game additive_game(std::vector<double> c) {
    const int n = static_cast<int>(c.size());
    return Game(n, [c = std::move(c)](Coalition s) {
        double acc = 0.0;
        s.for_each([&](int p) { acc += c[static_cast<std::size_t>(p)]; });
        return acc;
    });
}

}  // namespace

TEST_CASE("additive game allocates the per-player constants") {
    const Game g = additive_game({2.0, -1.0, 5.0});
    for (const Allocation& a :
         {shapley_exact_subsets(g), shapley_exact_permutations(g),
          shapley_monte_carlo(g, McConfig{10, 123, false})}) {
        REQUIRE(a.values.size() == 3);
        CHECK(a.values[0] == 2.0);
        CHECK(a.values[1] == -1.0);
        CHECK(a.values[2] == 5.0);
        CHECK(std::abs(a.residual) < 1e-12);
    }
}

TEST_CASE("symmetric game splits the grand value evenly") {
    const Game g(3, [](Coalition s) { return static_cast<double>(s.size() * s.size()); });
    const Allocation a = shapley_exact_subsets(g);
    for (double v : a.values) CHECK(v == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("hand-enumerated two-player game") {
    const Game g = testutil::table_game(2, {0.0, 1.0, 3.0, 6.0});
    const Allocation sub = shapley_exact_subsets(g);
    const Allocation perm = shapley_exact_permutations(g);
    CHECK(sub.values[0] == doctest::Approx(2.0));
    CHECK(sub.values[1] == doctest::Approx(4.0));
    CHECK(perm.values[0] == doctest::Approx(2.0));
    CHECK(perm.values[1] == doctest::Approx(4.0));

    const auto [s1, s2] = shapley_two_player(1.0, 3.0, 6.0);
    CHECK(s1 == doctest::Approx(2.0));
    CHECK(s2 == doctest::Approx(4.0));
}

TEST_CASE("two-player closed form corner cases") {
    const auto [a1, a2] = shapley_two_player(7.5, 7.5, 15.0);
    CHECK(a1 == 7.5);
    CHECK(a2 == 7.5);
    const auto [n1, n2] = shapley_two_player(5.0, 0.0, 5.0);
    CHECK(n1 == 5.0);
    CHECK(n2 == 0.0);
}

TEST_CASE("single-player game") {
    const Game g = testutil::table_game(1, {0.0, 4.25});
    CHECK(shapley_exact_permutations(g).values[0] == 4.25);
    CHECK(shapley_exact_subsets(g).values[0] == 4.25);
}

TEST_CASE("subset and permutation methods agree with brute force") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const int n = 5;
        const Game g = testutil::table_game(n, testutil::random_game_table(n, seed));
        const Allocation sub = shapley_exact_subsets(g);
        const Allocation perm = shapley_exact_permutations(g);
        const std::vector<double> ref = testutil::reference_shapley(n, g);
        for (int i = 0; i < n; ++i) {
            CHECK(rel_err(sub.values[i], perm.values[i]) < 1e-9);
            CHECK(rel_err(sub.values[i], ref[i]) < 1e-9);
        }
    }
}

TEST_CASE("efficiency holds on random games") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int n = 1 + static_cast<int>(seed % 10);
        const Game g = testutil::table_game(n, testutil::random_game_table(n, seed));
        for (const Allocation& a : {shapley_exact_subsets(g),
                                    n <= default_permutation_limit
                                        ? shapley_exact_permutations(g)
                                        : shapley_exact_subsets(g)}) {
            double sum = 0.0;
            for (double v : a.values) sum += v;
            CHECK(rel_err(sum, a.grand_value) < 1e-9);
        }
    }
}

TEST_CASE("null player receives zero") {
    const int n = 6;
    std::vector<double> base = testutil::random_game_table(n - 1, 44);
    // Player 2 never changes the value: v(S) = base(S with bit 2 squeezed out).
    const Game g(n, [base](Coalition s) {
        const std::uint64_t m = s.mask();
        const std::uint64_t low = m & 0b11;
        const std::uint64_t high = (m >> 3) << 2;
        return base[low | high];
    });
    const Allocation a = shapley_exact_subsets(g);
    CHECK(std::abs(a.values[2]) < 1e-12);
}

TEST_CASE("relabeling players permutes the allocation") {
    const int n = 6;
    const std::vector<double> table = testutil::random_game_table(n, 77);
    const Game g = testutil::table_game(n, table);
    const std::vector<int> to_old = {3, 0, 5, 1, 4, 2};  // new label -> old label
    const Game permuted(n, [&table, &to_old](Coalition s) {
        std::uint64_t old_mask = 0;
        s.for_each([&](int p) {
            old_mask |= std::uint64_t{1} << to_old[static_cast<std::size_t>(p)];
        });
        return table[old_mask];
    });
    const Allocation a = shapley_exact_subsets(g);
    const Allocation b = shapley_exact_subsets(permuted);
    for (int i = 0; i < n; ++i)
        CHECK(rel_err(b.values[i], a.values[to_old[static_cast<std::size_t>(i)]]) < 1e-9);
}

TEST_CASE("linearity in the characteristic function") {
    const int n = 6;
    const std::vector<double> tv = testutil::random_game_table(n, 5);
    const std::vector<double> tw = testutil::random_game_table(n, 6);
    const double a = 1.7, b = -0.6;
    std::vector<double> combo(tv.size());
    for (std::size_t m = 0; m < tv.size(); ++m) combo[m] = a * tv[m] + b * tw[m];

    const Allocation av = shapley_exact_subsets(testutil::table_game(n, tv));
    const Allocation aw = shapley_exact_subsets(testutil::table_game(n, tw));
    const Allocation ac = shapley_exact_subsets(testutil::table_game(n, combo));
    for (int i = 0; i < n; ++i)
        CHECK(rel_err(ac.values[i], a * av.values[i] + b * aw.values[i]) < 1e-9);
}

TEST_CASE("monte carlo determinism and thread independence") {
    const int n = 7;
    const Game g = testutil::table_game(n, testutil::random_game_table(n, 9));
    const McConfig cfg{5000, 4242, true};
    const Allocation a = shapley_monte_carlo(g, cfg, 1);
    const Allocation b = shapley_monte_carlo(g, cfg, 1);
    const Allocation c = shapley_monte_carlo(g, cfg, 4);
    for (int i = 0; i < n; ++i) {
        CHECK(a.values[i] == b.values[i]);
        CHECK(a.values[i] == c.values[i]);
        CHECK((*a.std_errors)[i] == (*c.std_errors)[i]);
    }
    const Allocation other = shapley_monte_carlo(g, McConfig{5000, 4243, false}, 1);
    bool any_diff = false;
    for (int i = 0; i < n; ++i) any_diff |= other.values[i] != a.values[i];
    CHECK(any_diff);
}

TEST_CASE("exact subsets is independent of thread count") {
    const int n = 9;
    const Game g = testutil::table_game(n, testutil::random_game_table(n, 10));
    const Allocation a = shapley_exact_subsets(g, default_subset_limit, 1);
    const Allocation b = shapley_exact_subsets(g, default_subset_limit, 3);
    for (int i = 0; i < n; ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("monte carlo matches the two-player closed form within 3 sigma") {
    const Game g = testutil::table_game(2, {0.0, 1.0, 3.0, 6.0});
    const Allocation mc = shapley_monte_carlo(g, McConfig{10000, 31337, true});
    REQUIRE(mc.std_errors.has_value());
    CHECK(std::abs(mc.values[0] - 2.0) <= 3.0 * (*mc.std_errors)[0]);
    CHECK(std::abs(mc.values[1] - 4.0) <= 3.0 * (*mc.std_errors)[1]);
}

TEST_CASE("monte carlo brackets the exact value on an 8-player game") {
    const int n = 8;
    const Game g = testutil::table_game(n, testutil::random_game_table(n, 11));
    const Allocation exact = shapley_exact_subsets(g);
    const Allocation mc = shapley_monte_carlo(g, McConfig{100000, 7, true}, 4);
    for (int i = 0; i < n; ++i)
        CHECK(std::abs(mc.values[i] - exact.values[i]) <= 4.0 * (*mc.std_errors)[i]);
}

TEST_CASE("monte carlo error halves when samples quadruple") {
    const int n = 8;
    const Game g = testutil::table_game(n, testutil::random_game_table(n, 12));
    const Allocation exact = shapley_exact_subsets(g);

    auto rmse_at = [&](std::uint64_t m) {
        double acc = 0.0;
        int count = 0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const Allocation mc = shapley_monte_carlo(g, McConfig{m, seed, false}, 2);
            for (int i = 0; i < n; ++i) {
                const double e = mc.values[i] - exact.values[i];
                acc += e * e;
                ++count;
            }
        }
        return std::sqrt(acc / count);
    };

    const double ratio = rmse_at(4096) / rmse_at(16384);
    CHECK(ratio >= 1.8);
    CHECK(ratio <= 2.2);
}

TEST_CASE("square-game transfer") {
    SUBCASE("single-factor example") {
        const Allocation sq{{4.0, 0.0, 0.0}, 4.0, 0.0, std::nullopt};
        const Allocation out = transfer_sqrt_approx(sq, 2.0);
        CHECK(out.values[0] == 2.0);
        CHECK(out.values[1] == 0.0);
        CHECK(out.grand_value == 2.0);
    }
    SUBCASE("sum transfers to sigma") {
        const Allocation sq{{1.0, 2.5, 3.5}, 7.0, 0.0, std::nullopt};
        const Allocation out = transfer_sqrt_approx(sq, std::sqrt(7.0));
        double sum = 0.0;
        for (double v : out.values) sum += v;
        CHECK(rel_err(sum, std::sqrt(7.0)) < 1e-12);
    }
    SUBCASE("two-factor variance example") {
        // var = (1, 4), cov = 1: row sums (2, 5), sigma(N) = sqrt(7).
        const Allocation sq{{2.0, 5.0}, 7.0, 0.0, std::nullopt};
        const Allocation out = transfer_sqrt_approx(sq, std::sqrt(7.0));
        CHECK(out.values[0] == doctest::Approx(0.75592894601845448).epsilon(1e-12));
        CHECK(out.values[1] == doctest::Approx(1.8898223650461362).epsilon(1e-12));
    }
    SUBCASE("degenerate grand value") {
        const Allocation sq{{1.0}, 1.0, 0.0, std::nullopt};
        CHECK_THROWS_AS(transfer_sqrt_approx(sq, 0.0), DegenerateGrandValue);
        CHECK_THROWS_AS(transfer_sqrt_approx(sq, -1.0), DegenerateGrandValue);
    }
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS(Game(2, nullptr), InvalidGame);
    CHECK_THROWS_AS(testutil::table_game(2, {0.5, 1.0, 3.0, 6.0}), InvalidGame);
    CHECK_THROWS_AS(Game(0, [](Coalition) { return 0.0; }), InvalidGame);
    CHECK_THROWS_AS(Game(65, [](Coalition) { return 0.0; }), PlayerLimitExceeded);

    const Game g = testutil::table_game(6, testutil::random_game_table(6, 1));
    CHECK_THROWS_AS(shapley_exact_subsets(g, 5), PlayerLimitExceeded);
    CHECK_THROWS_AS(shapley_exact_permutations(g, 5), PlayerLimitExceeded);
    CHECK_THROWS_AS(shapley_monte_carlo(g, McConfig{0, 1, false}), InvalidConfig);
}
