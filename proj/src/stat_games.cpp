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

#include "riskshap/stat_games.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <memory>
#include <utility>

namespace riskshap {

namespace {

// Coalition variance sum over the stored covariance, exploiting symmetry.
double coalition_variance(const Eigen::MatrixXd& sigma, Coalition s) {
    double acc = 0.0;
    s.for_each([&](int j) {
        acc += sigma(j, j);
        s.for_each([&](int k) {
            if (k < j) acc += 2.0 * sigma(j, k);
        });
    });
    return acc;
}

}  // namespace

ReturnPanel make_panel(Eigen::MatrixXd data, std::vector<std::string> factor_names) {
    if (data.cols() < 1) throw DegeneratePanel("panel needs at least one factor column");
    if (data.rows() < 2) throw DegeneratePanel("panel needs at least two observations");
    if (!data.allFinite()) throw DegeneratePanel("panel contains non-finite entries");
    if (factor_names.empty()) {
        factor_names.reserve(static_cast<std::size_t>(data.cols()));
        for (Eigen::Index j = 0; j < data.cols(); ++j)
            factor_names.push_back("f" + std::to_string(j + 1));
    } else if (static_cast<Eigen::Index>(factor_names.size()) != data.cols()) {
        throw DimensionError("factor name count does not match panel columns");
    }
    return ReturnPanel{std::move(data), std::move(factor_names)};
}

CovStructure::CovStructure(Eigen::MatrixXd sigma, Eigen::VectorXd mu)
    : sigma_(std::move(sigma)), mu_(std::move(mu)) {
    if (sigma_.rows() < 1 || sigma_.rows() != sigma_.cols())
        throw InvalidInput("covariance matrix must be square and non-empty");
    if (mu_.size() != sigma_.rows())
        throw InvalidInput("mean vector length does not match covariance dimension");
    if (!sigma_.allFinite() || !mu_.allFinite())
        throw InvalidInput("covariance structure contains non-finite entries");

    const double scale = sigma_.cwiseAbs().maxCoeff();
    const double asym = (sigma_ - sigma_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(scale, 1e-300))
        throw InvalidInput("covariance matrix is not symmetric");
    sigma_ = ((sigma_ + sigma_.transpose()) * 0.5).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma_, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (lo < -1e-10 * std::max(hi, 0.0))
        throw InvalidInput("covariance matrix is not positive semidefinite");
}

CovStructure estimate_cov(const ReturnPanel& panel) {
    const Eigen::Index t_obs = panel.observations();
    if (t_obs < 2) throw DegeneratePanel("covariance estimation needs at least two observations");
    if (!panel.data.allFinite()) throw DegeneratePanel("panel contains non-finite entries");

    Eigen::VectorXd mu = panel.data.colwise().mean();
    Eigen::MatrixXd centered = panel.data.rowwise() - mu.transpose();
    Eigen::MatrixXd sigma =
        (centered.transpose() * centered) / static_cast<double>(t_obs - 1);
    sigma = ((sigma + sigma.transpose()) * 0.5).eval();
    return CovStructure(std::move(sigma), std::move(mu));
}

Game variance_game(const CovStructure& cov) {
    auto sigma = std::make_shared<Eigen::MatrixXd>(cov.sigma());
    return Game(cov.size(),
                [sigma](Coalition s) { return coalition_variance(*sigma, s); });
}

Allocation variance_shapley_closed_form(const CovStructure& cov) {
    Allocation out;
    const Eigen::VectorXd row_sums = cov.sigma().rowwise().sum();
    out.values.assign(row_sums.data(), row_sums.data() + row_sums.size());
    out.grand_value = cov.total_variance();
    double sum = 0.0;
    for (double v : out.values) sum += v;
    out.residual = out.grand_value - sum;
    return out;
}

Game volatility_game(const CovStructure& cov) {
    auto sigma = std::make_shared<Eigen::MatrixXd>(cov.sigma());
    return Game(cov.size(), [sigma](Coalition s) {
        return std::sqrt(std::max(0.0, coalition_variance(*sigma, s)));
    });
}

Allocation volatility_shapley_approx(const CovStructure& cov) {
    const double total = cov.total_variance();
    if (!(total > 0.0))
        throw DegenerateGrandValue("volatility approximation needs positive total variance");
    const double grand_sigma = std::sqrt(total);

    Allocation out;
    const Eigen::VectorXd row_sums = cov.sigma().rowwise().sum();
    out.values.reserve(static_cast<std::size_t>(row_sums.size()));
    for (Eigen::Index i = 0; i < row_sums.size(); ++i)
        out.values.push_back(row_sums(i) / grand_sigma);
    out.grand_value = grand_sigma;
    double sum = 0.0;
    for (double v : out.values) sum += v;
    out.residual = grand_sigma - sum;
    return out;
}

}  // namespace riskshap
