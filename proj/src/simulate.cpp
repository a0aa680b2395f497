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

#include "riskshap/simulate.hpp"

#include <Eigen/Cholesky>

#include "riskshap/detail/rng.hpp"

namespace riskshap {

SimulatedPanel simulate_panel(int n_factors, int t_obs, std::uint64_t seed) {
    if (n_factors < 1) throw InvalidConfig("simulation needs at least one factor");
    if (t_obs < 2) throw InvalidConfig("simulation needs at least two observations");

    std::mt19937_64 gen = detail::substream(seed, 0);
    detail::NormalSampler normal;

    Eigen::MatrixXd a(n_factors, n_factors);
    for (int i = 0; i < n_factors; ++i)
        for (int j = 0; j < n_factors; ++j) a(i, j) = normal(gen);

    Eigen::MatrixXd sigma = a * a.transpose();
    sigma.diagonal().array() += static_cast<double>(n_factors) * 1e-6;
    sigma = ((sigma + sigma.transpose()) * 0.5).eval();

    const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw NumericalBreakdown("Cholesky factorization of the simulated covariance failed");
    const Eigen::MatrixXd chol = llt.matrixL();

    Eigen::MatrixXd data(t_obs, n_factors);
    Eigen::VectorXd z(n_factors);
    for (int t = 0; t < t_obs; ++t) {
        for (int j = 0; j < n_factors; ++j) z(j) = normal(gen);
        data.row(t) = (chol * z).transpose();
    }

    return SimulatedPanel{make_panel(std::move(data)),
                          CovStructure(std::move(sigma), Eigen::VectorXd::Zero(n_factors))};
}

}  // namespace riskshap
