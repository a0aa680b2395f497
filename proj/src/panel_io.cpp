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

#include "riskshap/panel_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace riskshap {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_double(const std::string& token, std::size_t row, std::size_t col) {
    const std::string t = trim(token);
    double value = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                         ": cannot parse '" + t + "' as a number");
    if (!std::isfinite(value))
        throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                         ": non-finite value");
    return value;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return in;
}

}  // namespace

ReturnPanel load_panel(const std::string& path) {
    std::ifstream in = open_or_throw(path);

    std::string line;
    if (!std::getline(in, line)) throw DegeneratePanel("'" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> names = split_csv(line);
    if (names.empty()) throw ParseError("'" + path + "': header row has no fields");
    const std::size_t n_cols = names.size();

    std::vector<double> cells;
    std::size_t n_rows = 0;
    std::size_t row = 1;  // header was row 1
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != n_cols)
            throw DimensionError("row " + std::to_string(row) + " has " +
                                 std::to_string(fields.size()) + " fields, expected " +
                                 std::to_string(n_cols));
        for (std::size_t c = 0; c < n_cols; ++c)
            cells.push_back(parse_double(fields[c], row, c + 1));
        ++n_rows;
    }
    if (n_rows == 0) throw DegeneratePanel("'" + path + "' has no data rows");

    Eigen::MatrixXd data(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols));
    for (std::size_t r = 0; r < n_rows; ++r)
        for (std::size_t c = 0; c < n_cols; ++c)
            data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                cells[r * n_cols + c];
    return make_panel(std::move(data), names);
}

void save_panel(const std::string& path, const ReturnPanel& panel) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    for (std::size_t j = 0; j < panel.factor_names.size(); ++j) {
        if (j) out << ',';
        out << panel.factor_names[j];
    }
    out << '\n';
    char buf[40];
    for (Eigen::Index t = 0; t < panel.observations(); ++t) {
        for (Eigen::Index j = 0; j < panel.factors(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", panel.data(t, j));
            if (j) out << ',';
            out << buf;
        }
        out << '\n';
    }
}

FactorGrouping load_grouping(const std::string& path, int n_columns) {
    std::ifstream in = open_or_throw(path);

    FactorGrouping grouping;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t colon = t.find(':');
        if (colon == std::string::npos)
            throw ParseError("line " + std::to_string(row) + ": expected 'name: idx,idx,...'");
        const std::string name = trim(t.substr(0, colon));
        if (name.empty()) throw ParseError("line " + std::to_string(row) + ": empty group name");

        std::vector<int> members;
        std::stringstream ss(t.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            const std::string idx = trim(tok);
            if (idx.empty()) continue;
            int value = 0;
            auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), value);
            if (ec != std::errc{} || ptr != idx.data() + idx.size())
                throw ParseError("line " + std::to_string(row) + ": bad column index '" + idx +
                                 "'");
            if (value < 0 || value >= n_columns)
                throw ParseError("line " + std::to_string(row) + ": column index " + idx +
                                 " outside the panel (" + std::to_string(n_columns) +
                                 " columns)");
            members.push_back(value);
        }
        if (members.empty())
            throw ParseError("line " + std::to_string(row) + ": group '" + name + "' is empty");
        grouping.names.push_back(name);
        grouping.groups.push_back(std::move(members));
    }
    if (grouping.groups.empty()) throw ParseError("'" + path + "' defines no groups");
    return grouping;
}

SabrScenario load_sabr_scenario(const std::string& path) {
    std::ifstream in = open_or_throw(path);

    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(row) + ": expected 'key=value'");
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }

    static const std::set<std::string> known = {"F",   "sigma0", "alpha", "beta",
                                                "rho", "theta",  "tau",   "K",
                                                "kind", "dF",    "dsigma", "dt"};
    for (const auto& [key, value] : kv)
        if (!known.count(key)) throw ParseError("unknown scenario key '" + key + "'");

    auto to_num = [](const std::string& key, const std::string& text) {
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
            throw ParseError("scenario key '" + key + "': cannot parse '" + text + "'");
        return value;
    };
    auto require = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw ParseError("scenario is missing required key '" + key + "'");
        return to_num(key, it->second);
    };
    auto optional = [&](const std::string& key, double fallback) {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : to_num(key, it->second);
    };

    SabrScenario sc;
    sc.state.forward = require("F");
    sc.state.sigma0 = require("sigma0");
    sc.state.alpha = require("alpha");
    sc.state.beta = require("beta");
    sc.state.rho = require("rho");
    sc.state.tau = require("tau");
    sc.state.strike = require("K");
    sc.state.theta = optional("theta", 0.0);
    sc.d_forward = optional("dF", 0.0);
    sc.d_sigma = optional("dsigma", 0.0);
    sc.dt = optional("dt", 0.0);

    if (auto it = kv.find("kind"); it != kv.end()) {
        if (it->second == "call") sc.state.kind = OptionKind::call;
        else if (it->second == "put") sc.state.kind = OptionKind::put;
        else throw ParseError("kind must be 'call' or 'put', got '" + it->second + "'");
    }
    return sc;
}

}  // namespace riskshap
