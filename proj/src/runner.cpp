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

#include "riskshap/runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "riskshap/panel_io.hpp"
#include "riskshap/report.hpp"
#include "riskshap/sabr.hpp"
#include "riskshap/simulate.hpp"

namespace riskshap {

namespace {

bool log_enabled() {
    const char* v = std::getenv("RISK_LOG");
    if (!v) return false;
    const std::string s(v);
    return !(s.empty() || s == "0" || s == "off" || s == "quiet");
}

void log_line(std::ostream& err, const std::string& msg) {
    if (log_enabled()) err << "[riskshap] " << msg << '\n';
}

std::string pick_method(const RunSpec& spec, const std::set<std::string>& allowed,
                        const std::string& fallback) {
    if (spec.method.empty()) return fallback;
    if (!allowed.count(spec.method)) {
        std::string msg = "method '" + spec.method + "' is not valid for " + spec.command +
                          " (expected one of:";
        for (const auto& m : allowed) msg += " " + m;
        throw InvalidConfig(msg + ")");
    }
    return spec.method;
}

Report allocation_report(const std::string& title, const Allocation& alloc,
                         const std::vector<std::string>& names, const std::string& method,
                         double portfolio_metric) {
    Report rep;
    rep.title = title;
    rep.portfolio_metric = portfolio_metric;
    for (std::size_t i = 0; i < alloc.values.size(); ++i) {
        ReportRow row;
        row.factor_name = i < names.size() ? names[i] : "f" + std::to_string(i + 1);
        row.value = alloc.values[i];
        if (alloc.std_errors) row.std_error = (*alloc.std_errors)[i];
        row.method_tag = method;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

void emit(const Report& rep, const RunSpec& spec, std::ostream& out) {
    render_text(out, rep);
    if (!spec.output_path.empty()) write_csv(spec.output_path, rep);
}

int run_variance_family(const RunSpec& spec, std::ostream& out, std::ostream& err,
                        bool volatility) {
    const std::string method =
        pick_method(spec, {"exact", "mc", volatility ? "approx" : "closed-form"},
                    volatility ? "approx" : "closed-form");
    const ReturnPanel panel = load_panel(spec.input_path);
    log_line(err, "panel " + std::to_string(panel.observations()) + "x" +
                      std::to_string(panel.factors()) + ", method " + method);
    const CovStructure cov = estimate_cov(panel);

    Allocation alloc;
    if (method == "closed-form") {
        alloc = variance_shapley_closed_form(cov);
    } else if (method == "approx") {
        alloc = volatility_shapley_approx(cov);
    } else {
        const Game game = volatility ? volatility_game(cov) : variance_game(cov);
        if (method == "exact") {
            alloc = shapley_exact_subsets(game, default_subset_limit, spec.threads);
        } else {
            alloc = shapley_monte_carlo(game, McConfig{spec.mc_samples, spec.seed, true},
                                        spec.threads);
        }
    }

    const double metric =
        volatility ? std::sqrt(cov.total_variance()) : cov.total_variance();
    emit(allocation_report(volatility ? "volatility attribution" : "variance attribution",
                           alloc, panel.factor_names, method, metric),
         spec, out);
    return 0;
}

int run_tail_family(const RunSpec& spec, std::ostream& out, std::ostream& err,
                    TailMetric metric) {
    const std::string method = pick_method(spec, {"exact", "mc", "approx"}, "mc");
    const ReturnPanel panel = load_panel(spec.input_path);
    const FactorGrouping grouping =
        spec.grouping_path.empty()
            ? identity_grouping(panel)
            : load_grouping(spec.grouping_path, static_cast<int>(panel.factors()));
    log_line(err, "panel " + std::to_string(panel.observations()) + "x" +
                      std::to_string(panel.factors()) + ", " +
                      std::to_string(grouping.groups.size()) + " groups, method " + method);

    const std::string title =
        std::string(metric == TailMetric::var ? "VaR" : "ES") + " attribution (q=" +
        [&] { char b[16]; std::snprintf(b, sizeof b, "%g", spec.q); return std::string(b); }() +
        ")";

    if (method == "approx") {
        // Parametric attribution of the grouped factor P&L.
        const auto n_groups = static_cast<Eigen::Index>(grouping.groups.size());
        Eigen::MatrixXd grouped = Eigen::MatrixXd::Zero(panel.observations(), n_groups);
        for (Eigen::Index g = 0; g < n_groups; ++g)
            for (int c : grouping.groups[static_cast<std::size_t>(g)])
                grouped.col(g) += panel.data.col(c);
        const CovStructure cov =
            estimate_cov(make_panel(std::move(grouped), grouping.names));
        const Allocation alloc =
            elliptical_attribution(cov, spec.tail_model, spec.q, metric, spec.nu);
        emit(allocation_report(title, alloc, grouping.names, method, alloc.grand_value),
             spec, out);
        return 0;
    }

    const Game game = make_tail_game(panel, grouping, metric, spec.q);
    const Allocation alloc =
        method == "exact"
            ? shapley_exact_subsets(game, default_subset_limit, spec.threads)
            : shapley_monte_carlo(game, McConfig{spec.mc_samples, spec.seed, true},
                                  spec.threads);
    emit(allocation_report(title, alloc, grouping.names, method, game.grand_value()), spec,
         out);
    return 0;
}

int run_sabr_greeks(const RunSpec& spec, std::ostream& out) {
    const SabrScenario sc = load_sabr_scenario(spec.input_path);
    const GreeksReport g = sabr_greeks(sc.state);

    const std::pair<const char*, double> fields[] = {
        {"price", g.price},
        {"delta", g.delta},
        {"bartlett_delta", g.bartlett_delta},
        {"vega", g.vega},
        {"bartlett_vega", g.bartlett_vega},
        {"theta_decay", g.theta_decay},
        {"gamma", g.gamma},
        {"vanna", g.vanna},
        {"volga", g.volga},
        {"implied_normal_vol", g.implied_normal_vol},
    };
    char buf[40];
    out << "sabr greeks (" << (sc.state.kind == OptionKind::call ? "call" : "put") << ")\n";
    for (const auto& [name, value] : fields) {
        std::snprintf(buf, sizeof buf, "%-20s %14.8g", name, value);
        out << buf << '\n';
    }
    if (!spec.output_path.empty()) {
        std::ofstream csv(spec.output_path);
        if (!csv) throw ParseError("cannot open '" + spec.output_path + "' for writing");
        csv << "greek,value\n";
        for (const auto& [name, value] : fields) {
            std::snprintf(buf, sizeof buf, "%.17g", value);
            csv << name << ',' << buf << '\n';
        }
    }
    return 0;
}

int run_sabr_attribute(const RunSpec& spec, std::ostream& out) {
    const SabrScenario sc = load_sabr_scenario(spec.input_path);
    const PnlDecomposition dec = pnl_decompose(sc.state, sc.d_forward, sc.d_sigma, sc.dt);
    const DeltaVegaSplit split = shapley_delta_vega(sc.state, sc.d_forward, sc.d_sigma);

    Report rep;
    rep.title = "sabr P&L attribution";
    rep.rows.push_back({"delta", split.sh_delta, std::nullopt, "shapley"});
    rep.rows.push_back({"vega", split.sh_vega, std::nullopt, "shapley"});
    rep.rows.push_back({"drift", dec.drift_term, std::nullopt, "carry"});
    rep.portfolio_metric = dec.total;
    emit(rep, spec, out);
    return 0;
}

int run_simulate(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    const SimulatedPanel sim = simulate_panel(spec.sim_factors, spec.sim_obs, spec.seed);
    log_line(err, "simulated panel " + std::to_string(spec.sim_obs) + "x" +
                      std::to_string(spec.sim_factors) + ", seed " +
                      std::to_string(spec.seed));
    if (spec.output_path.empty()) {
        // CSV straight to stdout.
        for (std::size_t j = 0; j < sim.panel.factor_names.size(); ++j)
            out << (j ? "," : "") << sim.panel.factor_names[j];
        out << '\n';
        char buf[40];
        for (Eigen::Index t = 0; t < sim.panel.observations(); ++t) {
            for (Eigen::Index j = 0; j < sim.panel.factors(); ++j) {
                std::snprintf(buf, sizeof buf, "%.17g", sim.panel.data(t, j));
                out << (j ? "," : "") << buf;
            }
            out << '\n';
        }
    } else {
        save_panel(spec.output_path, sim.panel);
        out << "wrote " << spec.sim_obs << "x" << spec.sim_factors << " panel to "
            << spec.output_path << " (seed " << spec.seed << ")\n";
    }
    return 0;
}

}  // namespace

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        if (spec.threads < 1) throw InvalidConfig("threads must be >= 1");
        if (spec.command == "attribute-variance") return run_variance_family(spec, out, err, false);
        if (spec.command == "attribute-volatility") return run_variance_family(spec, out, err, true);
        if (spec.command == "attribute-var") return run_tail_family(spec, out, err, TailMetric::var);
        if (spec.command == "attribute-es") return run_tail_family(spec, out, err, TailMetric::es);
        if (spec.command == "sabr-greeks") return run_sabr_greeks(spec, out);
        if (spec.command == "sabr-attribute") return run_sabr_attribute(spec, out);
        if (spec.command == "simulate") return run_simulate(spec, out, err);
        throw InvalidConfig("unknown command '" + spec.command + "'");
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace riskshap
