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

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace riskshap {

struct ReportRow {
    std::string factor_name;
    double value = 0.0;
    std::optional<double> std_error;
    std::string method_tag;
};

/// Attribution report: one row per factor plus a TOTAL row. The TOTAL row's
/// value is the sum of the factor rows; `portfolio_metric`, when present, is
/// the independently computed target and the residual column shows
/// portfolio_metric - TOTAL.
struct Report {
    std::string title;
    std::vector<ReportRow> rows;
    std::optional<double> portfolio_metric;

    double total() const;
};

/// Aligned plain-text table.
void render_text(std::ostream& out, const Report& report);

/// CSV with columns factor,value,stderr,method,residual (residual populated
/// on the TOTAL row only).
void write_csv(const std::string& path, const Report& report);

}  // namespace riskshap
