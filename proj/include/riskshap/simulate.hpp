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

#include <cstdint>

#include "riskshap/stat_games.hpp"

namespace riskshap {

struct SimulatedPanel {
    ReturnPanel panel;
    CovStructure cov;
};

/// Synthetic Gaussian P&L panel: a covariance Sigma = A*A^T + n*1e-6*I is
/// drawn from a seeded standard-normal n x n matrix A, then T rows are drawn
/// i.i.d. from N(0, Sigma) via its Cholesky factor. Bit-identical output for
/// equal (n_factors, t_obs, seed). The returned CovStructure holds the
/// generating Sigma with zero means.
SimulatedPanel simulate_panel(int n_factors, int t_obs, std::uint64_t seed);

}  // namespace riskshap
