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

#include <string>

#include "riskshap/sabr.hpp"
#include "riskshap/stat_games.hpp"
#include "riskshap/tail_risk.hpp"

namespace riskshap {

/// Loads a P&L panel from a CSV file: UTF-8, comma-separated, first row the
/// factor names, one observation per row, decimal point, no thousands
/// separators. Parse failures name the offending row and column; ragged rows
/// raise DimensionError; a file with no data rows raises DegeneratePanel.
ReturnPanel load_panel(const std::string& path);

/// Writes a panel in the load_panel format with round-trip-exact floats.
void save_panel(const std::string& path, const ReturnPanel& panel);

/// Loads a factor grouping: one line per factor of the form
/// `name: idx,idx,...` with zero-based column indices into the panel.
/// Blank lines and lines starting with '#' are skipped.
FactorGrouping load_grouping(const std::string& path, int n_columns);

/// SABR scenario: model state plus the realized move used by the P&L
/// attribution commands.
struct SabrScenario {
    SabrState state;
    double d_forward = 0.0;
    double d_sigma = 0.0;
    double dt = 0.0;
};

/// Loads a SABR scenario from key=value lines: F, sigma0, alpha, beta, rho,
/// tau, K required; theta, kind (call|put), dF, dsigma, dt optional.
SabrScenario load_sabr_scenario(const std::string& path);

}  // namespace riskshap
