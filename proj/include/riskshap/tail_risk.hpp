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

#include <span>
#include <string>
#include <vector>

#include "riskshap/shapley.hpp"
#include "riskshap/stat_games.hpp"

namespace riskshap {

enum class TailMetric { var, es };
enum class TailModel { historical, gaussian, student_t };

/// Tail-metric configuration. `q` is the confidence level (0.95 means the
/// 5% left tail), `lookback` the number of observations, and `nu` the
/// Student t degrees of freedom when model == student_t.
struct TailConfig {
    double q = 0.95;
    int lookback = 500;
    TailModel model = TailModel::historical;
    double nu = 0.0;
};

/// Groups of panel column indices defining the risk factors of a tail game.
/// Groups may overlap; shared columns then count once per group they appear
/// in. Every group must be nonempty and index valid columns.
struct FactorGrouping {
    std::vector<std::vector<int>> groups;
    std::vector<std::string> names;
};

/// One group per panel column.
FactorGrouping identity_grouping(const ReturnPanel& panel);

/// Historical VaR: sort the P&L series ascending and return the k-th
/// smallest with k = floor((1-q)*T), 1-indexed (T=500, q=0.95 gives the
/// 25th). Reported as a P&L quantile, typically negative. Throws
/// InsufficientData when the tail holds no observation (k < 1).
double historical_var(std::span<const double> series, double q);

/// Historical ES: arithmetic mean of the k smallest observations, k as in
/// historical_var. Always <= historical_var on the same series.
double historical_es(std::span<const double> series, double q);

/// Coalitional game whose value on S is the historical VaR or ES of the
/// summed P&L series of the groups in S; v(empty) = 0 (the empty portfolio's
/// P&L series is identically zero).
Game make_tail_game(const ReturnPanel& panel, const FactorGrouping& grouping,
                    TailMetric metric, double q);

/// Multipliers of sigma(X) in the elliptical VaR/ES formulas
///   VaR_q = mu(X) - a_q * sigma(X),  ES_q = mu(X) - b_q * sigma(X).
struct EllipticalConstants {
    double a_q = 0.0;
    double b_q = 0.0;
};

/// Gaussian: a_q = Phi^-1(q), b_q = phi(Phi^-1(q)) / (1-q).
/// Student t (nu > 2), standardized to unit variance with scale
/// s = sqrt((nu-2)/nu): a_q = s * t_nu^-1(q) and
/// b_q = s * f_nu(t_q) / (1-q) * (nu + t_q^2) / (nu - 1), where f_nu is the
/// standard t density and t_q its q-quantile.
EllipticalConstants elliptical_constants(TailModel model, double q, double nu = 0.0);

/// Closed-form Shapley attribution of a parametric (elliptical) VaR or ES:
///   Sh_i ~= mu(X_i) - c_q * cov(X_i, X) / sigma(X),
/// with c_q = a_q for VaR and b_q for ES. The values sum to
/// mu(X) - c_q * sigma(X), the portfolio metric, exactly up to rounding.
Allocation elliptical_attribution(const CovStructure& cov, TailModel model, double q,
                                  TailMetric metric, double nu = 0.0);

/// Monte Carlo Shapley attribution of a historical tail game, with standard
/// errors per McConfig.
Allocation tail_attribution_mc(const ReturnPanel& panel, const FactorGrouping& grouping,
                               TailMetric metric, double q, const McConfig& cfg,
                               int threads = 1);

}  // namespace riskshap
