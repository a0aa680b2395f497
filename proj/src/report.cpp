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

#include "riskshap/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>

#include "riskshap/errors.hpp"

namespace riskshap {

namespace {

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

double Report::total() const {
    double sum = 0.0;
    for (const auto& r : rows) sum += r.value;
    return sum;
}

void render_text(std::ostream& out, const Report& report) {
    const bool have_stderr =
        std::any_of(report.rows.begin(), report.rows.end(),
                    [](const ReportRow& r) { return r.std_error.has_value(); });

    std::size_t name_width = 6;  // "factor"
    for (const auto& r : report.rows) name_width = std::max(name_width, r.factor_name.size());

    if (!report.title.empty()) out << report.title << '\n';
    out << std::left << std::setw(static_cast<int>(name_width) + 2) << "factor" << std::right
        << std::setw(14) << "value";
    if (have_stderr) out << std::setw(14) << "stderr";
    out << "  method" << '\n';

    for (const auto& r : report.rows) {
        out << std::left << std::setw(static_cast<int>(name_width) + 2) << r.factor_name
            << std::right << std::setw(14) << fmt(r.value);
        if (have_stderr) out << std::setw(14) << (r.std_error ? fmt(*r.std_error) : "");
        out << "  " << r.method_tag << '\n';
    }

    const double sum = report.total();
    out << std::left << std::setw(static_cast<int>(name_width) + 2) << "TOTAL" << std::right
        << std::setw(14) << fmt(sum);
    if (have_stderr) out << std::setw(14) << "";
    out << "  ";
    if (report.portfolio_metric)
        out << "residual " << fmt(*report.portfolio_metric - sum, "%.3e");
    out << '\n';
}

void write_csv(const std::string& path, const Report& report) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << "factor,value,stderr,method,residual\n";
    for (const auto& r : report.rows) {
        out << r.factor_name << ',' << fmt(r.value, "%.17g") << ',';
        if (r.std_error) out << fmt(*r.std_error, "%.17g");
        out << ',' << r.method_tag << ",\n";
    }
    const double sum = report.total();
    out << "TOTAL," << fmt(sum, "%.17g") << ",,,";
    if (report.portfolio_metric) out << fmt(*report.portfolio_metric - sum, "%.17g");
    out << '\n';
}

}  // namespace riskshap
