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

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "riskshap/panel_io.hpp"
#include "riskshap/runner.hpp"
#include "riskshap/sabr.hpp"
#include "riskshap/shapley.hpp"
#include "riskshap/simulate.hpp"
#include "riskshap/stat_games.hpp"
#include "riskshap/tail_risk.hpp"

namespace py = pybind11;
using namespace riskshap;

namespace {

TailMetric parse_metric(const std::string& name) {
    if (name == "var") return TailMetric::var;
    if (name == "es") return TailMetric::es;
    throw InvalidConfig("metric must be 'var' or 'es', got '" + name + "'");
}

TailModel parse_model(const std::string& name) {
    if (name == "historical") return TailModel::historical;
    if (name == "gaussian") return TailModel::gaussian;
    if (name == "student_t" || name == "student-t") return TailModel::student_t;
    throw InvalidConfig("model must be historical, gaussian, or student_t; got '" + name + "'");
}

OptionKind parse_kind(const std::string& name) {
    if (name == "call") return OptionKind::call;
    if (name == "put") return OptionKind::put;
    throw InvalidConfig("kind must be 'call' or 'put', got '" + name + "'");
}

McConfig mc_config(std::uint64_t sample_size, std::uint64_t seed, bool with_stderr) {
    return McConfig{sample_size, seed, with_stderr};
}

}  // namespace

PYBIND11_MODULE(_riskshap, m) {
    m.doc() = "Shapley-value risk attribution for portfolios";
    m.attr("__version__") = "0.1.0";

    auto& error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", error.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", error.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", error.ptr());

    py::class_<Game>(m, "Game")
        .def_property_readonly("players", &Game::players)
        .def("value",
             [](const Game& g, const std::vector<int>& members) {
                 Coalition s;
                 for (int p : members) {
                     if (p < 0 || p >= g.players())
                         throw InvalidInput("player index out of range");
                     s = s.with(p);
                 }
                 return g.value(s);
             },
             py::arg("members"), "Characteristic-function value of a coalition.")
        .def_property_readonly("grand_value", &Game::grand_value);

    py::class_<Allocation>(m, "Allocation")
        .def_readonly("values", &Allocation::values)
        .def_readonly("grand_value", &Allocation::grand_value)
        .def_readonly("residual", &Allocation::residual)
        .def_readonly("std_errors", &Allocation::std_errors)
        .def("__repr__", [](const Allocation& a) {
            return "Allocation(" + std::to_string(a.values.size()) +
                   " players, grand_value=" + std::to_string(a.grand_value) + ")";
        });

    m.def("game_from_table",
          [](int n, const std::vector<double>& table) {
              if (n < 1 || n > 30) throw InvalidConfig("table game needs 1 <= n <= 30");
              if (table.size() != (std::size_t{1} << n))
                  throw InvalidConfig("table length must be 2^n, indexed by coalition bitmask");
              return Game(n, [table](Coalition s) { return table[s.mask()]; });
          },
          py::arg("n"), py::arg("table"),
          "Game from a 2^n value table indexed by coalition bitmask.");

    m.def("game_from_callable",
          [](int n, const py::function& fn) {
              return Game(n, [fn](Coalition s) {
                  const py::gil_scoped_acquire gil;
                  return fn(s.members()).cast<double>();
              });
          },
          py::arg("n"), py::arg("fn"),
          "Game from a Python callable mapping a member list to a value; evaluate with "
          "threads=1.");

    m.def("shapley_exact_subsets", &shapley_exact_subsets, py::arg("game"),
          py::arg("limit") = default_subset_limit, py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("shapley_exact_permutations", &shapley_exact_permutations, py::arg("game"),
          py::arg("limit") = default_permutation_limit,
          py::call_guard<py::gil_scoped_release>());
    m.def("shapley_two_player", &shapley_two_player, py::arg("v1"), py::arg("v2"),
          py::arg("v12"));
    m.def("shapley_monte_carlo",
          [](const Game& g, std::uint64_t sample_size, std::uint64_t seed, bool with_stderr,
             int threads) {
              const py::gil_scoped_release release;
              return shapley_monte_carlo(g, mc_config(sample_size, seed, with_stderr), threads);
          },
          py::arg("game"), py::arg("sample_size"), py::arg("seed") = 0,
          py::arg("with_stderr") = false, py::arg("threads") = 1);
    m.def("transfer_sqrt_approx", &transfer_sqrt_approx, py::arg("alloc_sq"),
          py::arg("grand_sigma"));

    py::class_<ReturnPanel>(m, "ReturnPanel")
        .def(py::init([](Eigen::MatrixXd data, std::vector<std::string> names) {
                 return make_panel(std::move(data), std::move(names));
             }),
             py::arg("data"), py::arg("factor_names") = std::vector<std::string>{})
        .def_readonly("data", &ReturnPanel::data)
        .def_readonly("factor_names", &ReturnPanel::factor_names)
        .def_property_readonly("observations", &ReturnPanel::observations)
        .def_property_readonly("factors", &ReturnPanel::factors);

    py::class_<CovStructure>(m, "CovStructure")
        .def(py::init<Eigen::MatrixXd, Eigen::VectorXd>(), py::arg("sigma"), py::arg("mu"))
        .def_property_readonly("sigma", &CovStructure::sigma)
        .def_property_readonly("mu", &CovStructure::mu)
        .def_property_readonly("total_variance", &CovStructure::total_variance);

    m.def("estimate_cov", &estimate_cov, py::arg("panel"));
    m.def("variance_game", &variance_game, py::arg("cov"));
    m.def("variance_shapley_closed_form", &variance_shapley_closed_form, py::arg("cov"));
    m.def("volatility_game", &volatility_game, py::arg("cov"));
    m.def("volatility_shapley_approx", &volatility_shapley_approx, py::arg("cov"));

    m.def("historical_var",
          [](const std::vector<double>& series, double q) {
              return historical_var(std::span<const double>(series), q);
          },
          py::arg("series"), py::arg("q"));
    m.def("historical_es",
          [](const std::vector<double>& series, double q) {
              return historical_es(std::span<const double>(series), q);
          },
          py::arg("series"), py::arg("q"));

    m.def("make_tail_game",
          [](const ReturnPanel& panel, const std::vector<std::vector<int>>& groups,
             const std::string& metric, double q) {
              FactorGrouping grouping;
              grouping.groups = groups;
              return make_tail_game(panel, grouping, parse_metric(metric), q);
          },
          py::arg("panel"), py::arg("groups"), py::arg("metric"), py::arg("q"));

    py::class_<EllipticalConstants>(m, "EllipticalConstants")
        .def_readonly("a_q", &EllipticalConstants::a_q)
        .def_readonly("b_q", &EllipticalConstants::b_q);

    m.def("elliptical_constants",
          [](const std::string& model, double q, double nu) {
              return elliptical_constants(parse_model(model), q, nu);
          },
          py::arg("model"), py::arg("q"), py::arg("nu") = 0.0);
    m.def("elliptical_attribution",
          [](const CovStructure& cov, const std::string& model, double q,
             const std::string& metric, double nu) {
              return elliptical_attribution(cov, parse_model(model), q, parse_metric(metric),
                                            nu);
          },
          py::arg("cov"), py::arg("model"), py::arg("q"), py::arg("metric"),
          py::arg("nu") = 0.0);
    m.def("tail_attribution_mc",
          [](const ReturnPanel& panel, const std::vector<std::vector<int>>& groups,
             const std::string& metric, double q, std::uint64_t sample_size,
             std::uint64_t seed, bool with_stderr, int threads) {
              FactorGrouping grouping;
              grouping.groups = groups;
              const py::gil_scoped_release release;
              return tail_attribution_mc(panel, grouping, parse_metric(metric), q,
                                         mc_config(sample_size, seed, with_stderr), threads);
          },
          py::arg("panel"), py::arg("groups"), py::arg("metric"), py::arg("q"),
          py::arg("sample_size"), py::arg("seed") = 0, py::arg("with_stderr") = true,
          py::arg("threads") = 1);

    py::class_<SabrState>(m, "SabrState")
        .def(py::init([](double forward, double sigma0, double alpha, double beta, double rho,
                         double theta, double tau, double strike, const std::string& kind) {
                 SabrState s{forward, sigma0, alpha, beta, rho, theta, tau, strike,
                             parse_kind(kind)};
                 s.validate();
                 return s;
             }),
             py::arg("forward"), py::arg("sigma0"), py::arg("alpha"), py::arg("beta"),
             py::arg("rho"), py::arg("theta") = 0.0, py::arg("tau") = 1.0,
             py::arg("strike") = 0.0, py::arg("kind") = "call")
        .def_readonly("forward", &SabrState::forward)
        .def_readonly("sigma0", &SabrState::sigma0)
        .def_readonly("alpha", &SabrState::alpha)
        .def_readonly("beta", &SabrState::beta)
        .def_readonly("rho", &SabrState::rho)
        .def_readonly("theta", &SabrState::theta)
        .def_readonly("tau", &SabrState::tau)
        .def_readonly("strike", &SabrState::strike);

    py::class_<GreeksReport>(m, "GreeksReport")
        .def_readonly("price", &GreeksReport::price)
        .def_readonly("delta", &GreeksReport::delta)
        .def_readonly("bartlett_delta", &GreeksReport::bartlett_delta)
        .def_readonly("vega", &GreeksReport::vega)
        .def_readonly("bartlett_vega", &GreeksReport::bartlett_vega)
        .def_readonly("theta_decay", &GreeksReport::theta_decay)
        .def_readonly("gamma", &GreeksReport::gamma)
        .def_readonly("vanna", &GreeksReport::vanna)
        .def_readonly("volga", &GreeksReport::volga)
        .def_readonly("implied_normal_vol", &GreeksReport::implied_normal_vol);

    py::class_<PnlDecomposition>(m, "PnlDecomposition")
        .def_readonly("drift_term", &PnlDecomposition::drift_term)
        .def_readonly("bartlett_delta_term", &PnlDecomposition::bartlett_delta_term)
        .def_readonly("vega_orth_term", &PnlDecomposition::vega_orth_term)
        .def_readonly("delta_orth_term", &PnlDecomposition::delta_orth_term)
        .def_readonly("bartlett_vega_term", &PnlDecomposition::bartlett_vega_term)
        .def_readonly("df_orth", &PnlDecomposition::df_orth)
        .def_readonly("dsigma_orth", &PnlDecomposition::dsigma_orth)
        .def_readonly("martingale", &PnlDecomposition::martingale)
        .def_readonly("total", &PnlDecomposition::total);

    py::class_<DeltaVegaSplit>(m, "DeltaVegaSplit")
        .def_readonly("sh_delta", &DeltaVegaSplit::sh_delta)
        .def_readonly("sh_vega", &DeltaVegaSplit::sh_vega);

    m.def("normal_black_price",
          [](double tau, double forward, double strike, double sigma_n,
             const std::string& kind) {
              return normal_black_price(tau, forward, strike, sigma_n, parse_kind(kind));
          },
          py::arg("tau"), py::arg("forward"), py::arg("strike"), py::arg("sigma_n"),
          py::arg("kind") = "call");
    m.def("sabr_implied_normal_vol", &sabr_implied_normal_vol, py::arg("state"));
    m.def("sabr_option_value", &sabr_option_value, py::arg("state"));
    m.def("sabr_greeks", &sabr_greeks, py::arg("state"));
    m.def("pnl_decompose", &pnl_decompose, py::arg("state"), py::arg("d_forward"),
          py::arg("d_sigma"), py::arg("dt"));
    m.def("shapley_delta_vega", &shapley_delta_vega, py::arg("state"), py::arg("d_forward"),
          py::arg("d_sigma"));

    py::class_<FactorDiffusion>(m, "FactorDiffusion")
        .def(py::init([](Eigen::VectorXd diff_coeffs, Eigen::MatrixXd corr,
                         Eigen::VectorXd sensitivities, Eigen::VectorXd moves,
                         double var_quadratic) {
                 FactorDiffusion fd{std::move(diff_coeffs), std::move(corr),
                                    std::move(sensitivities), std::move(moves), var_quadratic};
                 fd.validate();
                 return fd;
             }),
             py::arg("diff_coeffs"), py::arg("corr"), py::arg("sensitivities"),
             py::arg("moves"), py::arg("var_quadratic") = 0.0)
        .def_readonly("diff_coeffs", &FactorDiffusion::diff_coeffs)
        .def_readonly("corr", &FactorDiffusion::corr)
        .def_readonly("sensitivities", &FactorDiffusion::sensitivities)
        .def_readonly("moves", &FactorDiffusion::moves)
        .def_readonly("var_quadratic", &FactorDiffusion::var_quadratic);

    py::class_<PnlAttribution>(m, "PnlAttribution")
        .def_readonly("per_factor", &PnlAttribution::per_factor)
        .def_readonly("explained", &PnlAttribution::explained)
        .def_readonly("unexplained", &PnlAttribution::unexplained);

    m.def("correlation_adjusted_sensitivities", &correlation_adjusted_sensitivities,
          py::arg("fd"));
    m.def("multifactor_attribution", &multifactor_attribution, py::arg("fd"),
          py::arg("cov_of_moves"), py::arg("total_pnl"));

    m.def("simulate_panel",
          [](int n_factors, int t_obs, std::uint64_t seed) {
              SimulatedPanel sim = simulate_panel(n_factors, t_obs, seed);
              return py::make_tuple(std::move(sim.panel), std::move(sim.cov));
          },
          py::arg("n_factors"), py::arg("t_obs"), py::arg("seed") = 0,
          "Returns (panel, generating CovStructure).");
}
