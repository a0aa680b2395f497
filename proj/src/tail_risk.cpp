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

#include "riskshap/tail_risk.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <memory>
#include <numeric>

namespace riskshap {

namespace {

// k = floor((1-q)*T), with a 1e-9 guard so that values representable only
// approximately in binary (e.g. 0.05 * 500) land on the intended integer.
std::size_t tail_count(double q, std::size_t t_obs) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidConfig("confidence level must lie in (0, 1)");
    const double raw = (1.0 - q) * static_cast<double>(t_obs);
    const auto k = static_cast<long long>(std::floor(raw + 1e-9));
    if (k < 1)
        throw InsufficientData("tail holds no observation at this confidence/lookback");
    return std::min<std::size_t>(static_cast<std::size_t>(k), t_obs);
}

// Mean of the k smallest elements; partitions in place. Ties at the boundary
// cannot change the k-th value or the tail mean, so selection is equivalent
// to a full stable sort here.
double tail_mean_inplace(std::vector<double>& buf, std::size_t k) {
    auto kth = buf.begin() + static_cast<std::ptrdiff_t>(k) - 1;
    std::nth_element(buf.begin(), kth, buf.end());
    const double sum = std::accumulate(buf.begin(), kth + 1, 0.0);
    return sum / static_cast<double>(k);
}

double kth_smallest_inplace(std::vector<double>& buf, std::size_t k) {
    auto kth = buf.begin() + static_cast<std::ptrdiff_t>(k) - 1;
    std::nth_element(buf.begin(), kth, buf.end());
    return *kth;
}

}  // namespace

FactorGrouping identity_grouping(const ReturnPanel& panel) {
    FactorGrouping g;
    const int n = static_cast<int>(panel.factors());
    g.groups.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) g.groups.push_back({j});
    g.names = panel.factor_names;
    return g;
}

double historical_var(std::span<const double> series, double q) {
    if (series.empty()) throw InsufficientData("empty P&L series");
    std::vector<double> buf(series.begin(), series.end());
    return kth_smallest_inplace(buf, tail_count(q, buf.size()));
}

double historical_es(std::span<const double> series, double q) {
    if (series.empty()) throw InsufficientData("empty P&L series");
    std::vector<double> buf(series.begin(), series.end());
    return tail_mean_inplace(buf, tail_count(q, buf.size()));
}

Game make_tail_game(const ReturnPanel& panel, const FactorGrouping& grouping,
                    TailMetric metric, double q) {
    const auto n_groups = static_cast<int>(grouping.groups.size());
    if (n_groups < 1) throw InvalidConfig("grouping has no factors");
    const Eigen::Index t_obs = panel.observations();

    // Pre-sum each group's columns once; a coalition then costs one pass per
    // member group plus a selection.
    auto series = std::make_shared<Eigen::MatrixXd>(Eigen::MatrixXd::Zero(t_obs, n_groups));
    for (int g = 0; g < n_groups; ++g) {
        const auto& cols = grouping.groups[static_cast<std::size_t>(g)];
        if (cols.empty()) throw InvalidConfig("group " + std::to_string(g) + " is empty");
        for (int c : cols) {
            if (c < 0 || c >= panel.factors())
                throw InvalidConfig("group " + std::to_string(g) + " references column " +
                                    std::to_string(c) + " outside the panel");
            series->col(g) += panel.data.col(c);
        }
    }

    const std::size_t k = tail_count(q, static_cast<std::size_t>(t_obs));
    return Game(n_groups, [series, metric, k, t_obs](Coalition s) {
        if (s.is_empty()) return 0.0;
        std::vector<double> sum(static_cast<std::size_t>(t_obs), 0.0);
        s.for_each([&](int g) {
            const double* col = series->col(g).data();
            for (Eigen::Index t = 0; t < t_obs; ++t) sum[static_cast<std::size_t>(t)] += col[t];
        });
        return metric == TailMetric::var ? kth_smallest_inplace(sum, k)
                                         : tail_mean_inplace(sum, k);
    });
}

EllipticalConstants elliptical_constants(TailModel model, double q, double nu) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidConfig("confidence level must lie in (0, 1)");
    switch (model) {
        case TailModel::gaussian: {
            const boost::math::normal_distribution<double> norm;
            const double a = boost::math::quantile(norm, q);
            const double b = boost::math::pdf(norm, a) / (1.0 - q);
            return {a, b};
        }
        case TailModel::student_t: {
            if (!(nu > 2.0))
                throw InvalidConfig("Student t tail constants need nu > 2 (finite variance)");
            const boost::math::students_t_distribution<double> dist(nu);
            const double scale = std::sqrt((nu - 2.0) / nu);
            const double tq = boost::math::quantile(dist, q);
            const double a = scale * tq;
            const double b = scale * boost::math::pdf(dist, tq) / (1.0 - q) * (nu + tq * tq) /
                             (nu - 1.0);
            return {a, b};
        }
        case TailModel::historical:
            throw InvalidConfig("historical model has no parametric tail constants");
    }
    throw InvalidConfig("unknown tail model");
}

Allocation elliptical_attribution(const CovStructure& cov, TailModel model, double q,
                                  TailMetric metric, double nu) {
    const double total = cov.total_variance();
    if (!(total > 0.0))
        throw DegenerateGrandValue("elliptical attribution needs positive total variance");
    const double sigma_x = std::sqrt(total);

    const EllipticalConstants c = elliptical_constants(model, q, nu);
    const double c_q = metric == TailMetric::var ? c.a_q : c.b_q;

    Allocation out;
    const Eigen::VectorXd row_sums = cov.sigma().rowwise().sum();
    out.values.reserve(static_cast<std::size_t>(cov.size()));
    for (int i = 0; i < cov.size(); ++i)
        out.values.push_back(cov.mu()(i) - c_q * row_sums(i) / sigma_x);
    out.grand_value = cov.mu().sum() - c_q * sigma_x;
    double sum = 0.0;
    for (double v : out.values) sum += v;
    out.residual = out.grand_value - sum;
    return out;
}

Allocation tail_attribution_mc(const ReturnPanel& panel, const FactorGrouping& grouping,
                               TailMetric metric, double q, const McConfig& cfg,
                               int threads) {
    return shapley_monte_carlo(make_tail_game(panel, grouping, metric, q), cfg, threads);
}

}  // namespace riskshap
