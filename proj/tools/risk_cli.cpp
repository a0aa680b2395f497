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

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "riskshap/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Shapley-value risk attribution for portfolios"};
    app.require_subcommand(1);

    riskshap::RunSpec spec;
    std::string model = "gaussian";

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        auto* in = cmd->add_option("--input", spec.input_path, "input file path");
        if (needs_input) in->required();
        cmd->add_option("--method", spec.method, "computation method");
        cmd->add_option("--mc-samples", spec.mc_samples, "Monte Carlo samples per factor")
            ->default_val(100000);
        cmd->add_option("--seed", spec.seed, "random seed")->default_val(0);
        cmd->add_option("--threads", spec.threads, "worker threads")->default_val(1);
        cmd->add_option("--output", spec.output_path, "CSV output path");
    };

    auto* variance = app.add_subcommand("attribute-variance",
                                        "attribute portfolio variance to factors");
    add_common(variance, true);

    auto* volatility = app.add_subcommand("attribute-volatility",
                                          "attribute portfolio volatility to factors");
    add_common(volatility, true);

    auto add_tail = [&](const char* name, const char* help) {
        auto* cmd = app.add_subcommand(name, help);
        add_common(cmd, true);
        cmd->add_option("--groups", spec.grouping_path, "factor grouping file");
        cmd->add_option("--q", spec.q, "confidence level")->default_val(0.95);
        cmd->add_option("--model", model,
                        "parametric model for method=approx (gaussian|student-t)");
        cmd->add_option("--nu", spec.nu, "Student t degrees of freedom");
        return cmd;
    };
    add_tail("attribute-var", "attribute value-at-risk to factor groups");
    add_tail("attribute-es", "attribute expected shortfall to factor groups");

    auto* greeks = app.add_subcommand("sabr-greeks", "SABR greeks for a scenario file");
    add_common(greeks, true);

    auto* sabr_attr = app.add_subcommand("sabr-attribute",
                                         "Shapley delta/vega split of SABR option P&L");
    add_common(sabr_attr, true);

    auto* simulate = app.add_subcommand("simulate", "generate a synthetic Gaussian P&L panel");
    add_common(simulate, false);
    simulate->add_option("--factors", spec.sim_factors, "number of factors")->default_val(25);
    simulate->add_option("--observations", spec.sim_obs, "number of observations")
        ->default_val(500);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 4;
    }

    if (model == "gaussian") {
        spec.tail_model = riskshap::TailModel::gaussian;
    } else if (model == "student-t" || model == "student_t") {
        spec.tail_model = riskshap::TailModel::student_t;
    } else {
        std::cerr << "error: unknown model '" << model << "'\n";
        return 4;
    }

    spec.command = app.get_subcommands().front()->get_name();
    return riskshap::run(spec, std::cout, std::cerr);
}
