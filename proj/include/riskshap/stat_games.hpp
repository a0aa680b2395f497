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

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "riskshap/game.hpp"

namespace riskshap {

/// T x n matrix of per-factor P&L observations; row t is one time
/// observation across all factors.
struct ReturnPanel {
    Eigen::MatrixXd data;
    std::vector<std::string> factor_names;

    Eigen::Index observations() const { return data.rows(); }
    Eigen::Index factors() const { return data.cols(); }
};

ReturnPanel make_panel(Eigen::MatrixXd data, std::vector<std::string> factor_names = {});

/// Covariance structure of the factors: covariance matrix and mean vector.
/// Construction enforces symmetry (1e-12 relative) and positive
/// semidefiniteness (smallest eigenvalue >= -1e-10 times the largest); the
/// stored matrix is exactly symmetrized.
class CovStructure {
public:
    CovStructure(Eigen::MatrixXd sigma, Eigen::VectorXd mu);

    const Eigen::MatrixXd& sigma() const { return sigma_; }
    const Eigen::VectorXd& mu() const { return mu_; }
    int size() const { return static_cast<int>(sigma_.rows()); }

    /// Total portfolio variance, sum over all covariance entries.
    double total_variance() const { return sigma_.sum(); }

private:
    Eigen::MatrixXd sigma_;
    Eigen::VectorXd mu_;
};

/// Column means and unbiased sample covariance (divisor T-1) of a panel.
CovStructure estimate_cov(const ReturnPanel& panel);

/// Variance game: v(S) = sum over j,k in S of sigma[j][k], the variance of
/// the summed factor P&L restricted to the coalition.
Game variance_game(const CovStructure& cov);

/// Closed-form Shapley allocation of the variance game: Sh_i = cov(X_i, X),
/// the i-th row sum of the covariance matrix.
Allocation variance_shapley_closed_form(const CovStructure& cov);

/// Volatility game: v(S) = sqrt(variance of the coalition sum), with tiny
/// negative variances from rounding clamped to zero.
Game volatility_game(const CovStructure& cov);

/// Analytic approximation to the volatility-game Shapley value:
///   Sh_i(sigma) ~= cov(X_i, X) / sigma(X) = rho(X_i, X) * sigma(X_i).
/// The approximate vector sums to sigma(X) exactly up to rounding.
Allocation volatility_shapley_approx(const CovStructure& cov);

}  // namespace riskshap
