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
#include <ostream>
#include <string>

#include "riskshap/tail_risk.hpp"

namespace riskshap {

/// One CLI invocation. `method` defaults per command: closed-form for
/// attribute-variance, approx for attribute-volatility, mc for
/// attribute-var/es. `tail_model`/`nu` select the parametric model when
/// method == approx on the tail commands.
struct RunSpec {
    std::string command;
    std::string input_path;
    std::string grouping_path;
    double q = 0.95;
    std::string method;
    std::uint64_t mc_samples = 100000;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string output_path;
    int sim_factors = 25;
    int sim_obs = 500;
    TailModel tail_model = TailModel::gaussian;
    double nu = 0.0;
};

/// Dispatches a run: writes the report to `out`, a CSV copy to
/// `spec.output_path` when set, and diagnostics to `err`. Returns 0 on
/// success; typed errors are reported on `err` and mapped to the exit-code
/// contract (2 input, 3 numerical, 4 config).
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace riskshap
