#include <doctest.h>

#include <cmath>
#include <numeric>

#include "riskshap/tail_risk.hpp"
#include "test_util.hpp"

using namespace riskshap;
using testutil::rel_err;

namespace {

std::vector<double> iota_series(int t) {
    std::vector<double> s(static_cast<std::size_t>(t));
    std::iota(s.begin(), s.end(), 1.0);
    return s;
}

// Bisection inverse of the erfc-based normal CDF; independent of the
// boost-backed implementation under test.
double normal_quantile_oracle(double q) {
    double lo = -10.0, hi = 10.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (0.5 * std::erfc(-mid * M_SQRT1_2) < q ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("historical VaR and ES on the 1..500 ramp") {
    const std::vector<double> s = iota_series(500);
    CHECK(historical_var(s, 0.95) == 25.0);
    CHECK(historical_es(s, 0.95) == 13.0);
}

TEST_CASE("historical metrics on edge series") {
    const std::vector<double> c(40, 3.25);
    CHECK(historical_var(c, 0.95) == 3.25);
    CHECK(historical_es(c, 0.95) == 3.25);

    // T=20, q=0.95: floor(1) = 1, the single worst observation.
    std::vector<double> s = iota_series(20);
    s[7] = -99.0;
    CHECK(historical_var(s, 0.95) == -99.0);
    CHECK(historical_es(s, 0.95) == -99.0);

    CHECK_THROWS_AS(historical_var(iota_series(10), 0.95), InsufficientData);
    CHECK_THROWS_AS(historical_es(std::vector<double>{}, 0.95), InsufficientData);
    CHECK_THROWS_AS(historical_var(iota_series(10), 1.5), InvalidConfig);
}

TEST_CASE("ES never exceeds VaR") {
    std::mt19937_64 gen = detail::substream(7, 0);
    detail::NormalSampler normal;
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> s(100);
        for (double& x : s) x = normal(gen);
        CHECK(historical_es(s, 0.9) <= historical_var(s, 0.9));
    }
}

TEST_CASE("tail game basics") {
    // 40 observations (k = 2 at q = 0.95), 2 columns; each column's two
    // worst losses land on disjoint dates.
    Eigen::MatrixXd data = Eigen::MatrixXd::Zero(40, 2);
    data(0, 0) = data(1, 0) = -10.0;
    data(2, 1) = data(3, 1) = -10.0;
    for (int t = 4; t < 40; ++t) {
        data(t, 0) = 0.1 * t;
        data(t, 1) = 0.05 * t;
    }
    const ReturnPanel panel = make_panel(data);

    SUBCASE("single all-column group reproduces the portfolio metric") {
        FactorGrouping g;
        g.groups = {{0, 1}};
        const Game game = make_tail_game(panel, g, TailMetric::var, 0.95);
        const Eigen::VectorXd sums = data.rowwise().sum();
        const std::vector<double> series(sums.data(), sums.data() + sums.size());
        CHECK(game.value(Coalition::full(1)) == historical_var(series, 0.95));
    }

    SUBCASE("VaR is not additive across independent groups") {
        const Game game = make_tail_game(panel, identity_grouping(panel),
                                         TailMetric::var, 0.95);
        const double v0 = game.value(Coalition::singleton(0));
        const double v1 = game.value(Coalition::singleton(1));
        const double v01 = game.value(Coalition::full(2));
        CHECK(v0 == -10.0);
        CHECK(v1 == -10.0);
        CHECK(v01 != v0 + v1);
    }

    SUBCASE("duplicated groups split the grand value evenly") {
        FactorGrouping g;
        g.groups = {{0, 1}, {0, 1}};
        const Game game = make_tail_game(panel, g, TailMetric::es, 0.95);
        CHECK(game.value(Coalition::singleton(0)) == game.value(Coalition::singleton(1)));
        const Allocation a = shapley_exact_subsets(game);
        CHECK(a.values[0] == doctest::Approx(a.values[1]).epsilon(1e-12));
        CHECK(rel_err(a.values[0] + a.values[1], game.grand_value()) < 1e-12);
    }

    SUBCASE("empty coalition is worth zero") {
        const Game game = make_tail_game(panel, identity_grouping(panel),
                                         TailMetric::var, 0.95);
        CHECK(game.value(Coalition::empty()) == 0.0);
    }

    SUBCASE("bad groupings are rejected") {
        FactorGrouping empty_group;
        empty_group.groups = {{0}, {}};
        CHECK_THROWS_AS(make_tail_game(panel, empty_group, TailMetric::var, 0.95),
                        InvalidConfig);
        FactorGrouping bad_index;
        bad_index.groups = {{0, 2}};
        CHECK_THROWS_AS(make_tail_game(panel, bad_index, TailMetric::var, 0.95),
                        InvalidConfig);
    }
}

TEST_CASE("tail characteristic functions are translation equivariant") {
    std::mt19937_64 gen = detail::substream(21, 0);
    detail::NormalSampler normal;
    Eigen::MatrixXd data(60, 3);
    for (int t = 0; t < 60; ++t)
        for (int j = 0; j < 3; ++j) data(t, j) = normal(gen);

    const double shift = 2.75;
    Eigen::MatrixXd shifted = data;
    shifted.col(1).array() += shift;

    for (TailMetric metric : {TailMetric::var, TailMetric::es}) {
        const Game g0 = make_tail_game(make_panel(data), identity_grouping(make_panel(data)),
                                       metric, 0.9);
        const Game g1 = make_tail_game(make_panel(shifted),
                                       identity_grouping(make_panel(shifted)), metric, 0.9);
        CHECK(g1.value(Coalition::singleton(1)) ==
              doctest::Approx(g0.value(Coalition::singleton(1)) + shift).epsilon(1e-12));
        CHECK(g1.value(Coalition::singleton(0)) == g0.value(Coalition::singleton(0)));
    }
}

TEST_CASE("tail games are positively homogeneous") {
    std::mt19937_64 gen = detail::substream(22, 0);
    detail::NormalSampler normal;
    Eigen::MatrixXd data(50, 4);
    for (int t = 0; t < 50; ++t)
        for (int j = 0; j < 4; ++j) data(t, j) = normal(gen);
    const double lambda = 3.5;

    const ReturnPanel p1 = make_panel(data);
    const ReturnPanel p2 = make_panel((lambda * data).eval());
    for (TailMetric metric : {TailMetric::var, TailMetric::es}) {
        const Game g1 = make_tail_game(p1, identity_grouping(p1), metric, 0.9);
        const Game g2 = make_tail_game(p2, identity_grouping(p2), metric, 0.9);
        for (std::uint64_t m = 0; m < 16; ++m) {
            const Coalition s = Coalition::from_mask(m);
            CHECK(rel_err(g2.value(s), lambda * g1.value(s)) < 1e-12);
        }
        const Allocation a1 = shapley_exact_subsets(g1);
        const Allocation a2 = shapley_exact_subsets(g2);
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(a2.values[i] - lambda * a1.values[i]) < 1e-9);
    }
}

TEST_CASE("ES is below VaR for every coalition") {
    std::mt19937_64 gen = detail::substream(23, 0);
    detail::NormalSampler normal;
    Eigen::MatrixXd data(80, 5);
    for (int t = 0; t < 80; ++t)
        for (int j = 0; j < 5; ++j) data(t, j) = normal(gen);
    const ReturnPanel panel = make_panel(data);
    const Game var_game = make_tail_game(panel, identity_grouping(panel), TailMetric::var, 0.9);
    const Game es_game = make_tail_game(panel, identity_grouping(panel), TailMetric::es, 0.9);
    for (std::uint64_t m = 1; m < 32; ++m) {
        const Coalition s = Coalition::from_mask(m);
        CHECK(es_game.value(s) <= var_game.value(s));
    }
}

TEST_CASE("gaussian tail constants") {
    const EllipticalConstants c = elliptical_constants(TailModel::gaussian, 0.95);
    CHECK(c.a_q == doctest::Approx(1.6448536269514722).epsilon(1e-9));
    CHECK(c.b_q == doctest::Approx(2.0627128075074275).epsilon(1e-9));
    CHECK(c.a_q == doctest::Approx(normal_quantile_oracle(0.95)).epsilon(1e-9));

    const EllipticalConstants mid = elliptical_constants(TailModel::gaussian, 0.5);
    CHECK(std::abs(mid.a_q) < 1e-12);

    CHECK(elliptical_constants(TailModel::gaussian, 0.99).a_q ==
          doctest::Approx(2.3263478740408408).epsilon(1e-9));
    CHECK_THROWS_AS(elliptical_constants(TailModel::gaussian, 1.0), InvalidConfig);
    CHECK_THROWS_AS(elliptical_constants(TailModel::historical, 0.95), InvalidConfig);
}

TEST_CASE("student t tail constants (unit-variance standardization)") {
    // Frozen against an independent quadrature oracle for
    // E[T | T > t_q] * sqrt((nu-2)/nu).
    struct Row {
        double nu, a, b;
    };
    const Row rows[] = {
        {3.0, 1.3587150125838567, 2.2368093942678557},
        {5.0, 1.5608497583442291, 2.2386842554615200},
        {10.0, 1.6211145108721579, 2.1541393786603570},
    };
    for (const Row& r : rows) {
        const EllipticalConstants c = elliptical_constants(TailModel::student_t, 0.95, r.nu);
        CHECK(c.a_q == doctest::Approx(r.a).epsilon(1e-9));
        CHECK(c.b_q == doctest::Approx(r.b).epsilon(1e-9));
        CHECK(c.b_q >= c.a_q);
    }
    CHECK_THROWS_AS(elliptical_constants(TailModel::student_t, 0.95, 2.0), InvalidConfig);
}

TEST_CASE("elliptical attribution") {
    SUBCASE("two symmetric factors") {
        Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(2, 2);
        const CovStructure cov(sigma, Eigen::VectorXd::Zero(2));
        const Allocation a =
            elliptical_attribution(cov, TailModel::gaussian, 0.95, TailMetric::var);
        const double expected = -1.6448536269514722 / std::sqrt(2.0);
        CHECK(a.values[0] == doctest::Approx(expected).epsilon(1e-9));
        CHECK(a.values[1] == doctest::Approx(expected).epsilon(1e-9));
        CHECK(a.values[0] == doctest::Approx(-1.1631).epsilon(1e-4));
        CHECK(rel_err(a.grand_value, -1.6448536269514722 * std::sqrt(2.0)) < 1e-12);
    }
    SUBCASE("single factor reduces to the univariate metric") {
        Eigen::MatrixXd sigma(1, 1);
        sigma << 4.0;
        Eigen::VectorXd mu(1);
        mu << 0.3;
        const Allocation a = elliptical_attribution(CovStructure(sigma, mu),
                                                    TailModel::gaussian, 0.95, TailMetric::es);
        const double b_q = elliptical_constants(TailModel::gaussian, 0.95).b_q;
        CHECK(a.values[0] == doctest::Approx(0.3 - b_q * 2.0).epsilon(1e-12));
    }
    SUBCASE("risk part scales linearly in sigma") {
        const CovStructure cov = testutil::random_cov_structure(5, 31);
        Eigen::VectorXd mu = Eigen::VectorXd::Constant(5, 0.1);
        const CovStructure cov1(cov.sigma(), mu);
        const CovStructure cov4((4.0 * cov.sigma()).eval(), mu);
        const Allocation a1 =
            elliptical_attribution(cov1, TailModel::gaussian, 0.95, TailMetric::var);
        const Allocation a4 =
            elliptical_attribution(cov4, TailModel::gaussian, 0.95, TailMetric::var);
        for (int i = 0; i < 5; ++i)
            CHECK(rel_err(a4.values[i] - 0.1, 2.0 * (a1.values[i] - 0.1)) < 1e-9);
    }
    SUBCASE("efficiency: values sum to the parametric portfolio metric") {
        const CovStructure cov = testutil::random_cov_structure(6, 32);
        for (TailMetric metric : {TailMetric::var, TailMetric::es}) {
            const Allocation a =
                elliptical_attribution(cov, TailModel::gaussian, 0.95, metric);
            double sum = 0.0;
            for (double v : a.values) sum += v;
            CHECK(rel_err(sum, a.grand_value) < 1e-12);
        }
    }
    SUBCASE("zero variance is degenerate") {
        Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, 2);
        CHECK_THROWS_AS(elliptical_attribution(CovStructure(zero, Eigen::VectorXd::Zero(2)),
                                               TailModel::gaussian, 0.95, TailMetric::var),
                        DegenerateGrandValue);
    }
}

TEST_CASE("monte carlo tail attribution") {
    Eigen::MatrixXd data = Eigen::MatrixXd::Zero(40, 2);
    std::mt19937_64 gen = detail::substream(24, 0);
    detail::NormalSampler normal;
    for (int t = 0; t < 40; ++t)
        for (int j = 0; j < 2; ++j) data(t, j) = normal(gen);
    const ReturnPanel panel = make_panel(data);

    SUBCASE("symmetric duplicated groups split evenly within noise") {
        FactorGrouping g;
        g.groups = {{0, 1}, {0, 1}};
        const Allocation a =
            tail_attribution_mc(panel, g, TailMetric::var, 0.9, McConfig{4000, 5, true});
        const Game game = make_tail_game(panel, g, TailMetric::var, 0.9);
        const double half = 0.5 * game.grand_value();
        for (int i = 0; i < 2; ++i)
            CHECK(std::abs(a.values[i] - half) <= 3.0 * (*a.std_errors)[i] + 1e-12);
    }

    SUBCASE("agrees with exact enumeration within 4 standard errors") {
        const Allocation mc = tail_attribution_mc(panel, identity_grouping(panel),
                                                  TailMetric::es, 0.9,
                                                  McConfig{20000, 6, true}, 2);
        const Allocation exact = shapley_exact_subsets(
            make_tail_game(panel, identity_grouping(panel), TailMetric::es, 0.9));
        for (int i = 0; i < 2; ++i)
            CHECK(std::abs(mc.values[i] - exact.values[i]) <= 4.0 * (*mc.std_errors)[i]);
    }
}
