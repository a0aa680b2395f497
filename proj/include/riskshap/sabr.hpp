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

#include <Eigen/Dense>

#include "riskshap/stat_games.hpp"

namespace riskshap {

enum class OptionKind { call, put };

/// SABR model state and option contract terms:
///   dF = sigma * C(F) dW,   dsigma = alpha * sigma dZ,   dW dZ = rho dt,
/// with backbone C(x) = (x + theta)^beta. `sigma0` is the instantaneous
/// volatility parameter, `alpha` the vol-of-vol, `tau` the time to expiry in
/// years.
struct SabrState {
    double forward = 0.0;
    double sigma0 = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double rho = 0.0;
    double theta = 0.0;
    double tau = 0.0;
    double strike = 0.0;
    OptionKind kind = OptionKind::call;

    void validate() const;

    /// Backbone C(x) = (x + theta)^beta evaluated at the forward.
    double backbone() const;
};

/// Black pricing function in the normal (Bachelier) model, no discounting:
///   call: sigma*sqrt(tau) * (d N(d) + N'(d)),  d = (F - K) / (sigma sqrt(tau)),
///   put:  same with d replaced by -d.
double normal_black_price(double tau, double forward, double strike, double sigma_n,
                          OptionKind kind);

/// Normal volatility implied by the SABR model, via the standard asymptotic
/// expansion (see the note in src/sabr.cpp for the exact variant frozen
/// here). Converges to sigma0 as alpha -> 0 with beta = 0.
double sabr_implied_normal_vol(const SabrState& state);

/// Option value B(tau, F, K, sigma_imp(tau, F, sigma0)); all greeks are
/// sensitivities of this full valuation.
double sabr_option_value(const SabrState& state);

/// Greeks of the full valuation. First- and second-order derivatives in
/// (F, sigma0, tau) include the chain-rule terms through the implied vol,
/// whose own partials are computed by central finite differences.
/// bartlett_delta = delta + rho*(alpha/C(F))*vega accounts for the
/// volatility move statistically induced by a forward move; bartlett_vega =
/// vega + rho*(C(F)/alpha)*delta is the symmetric correction and is NaN
/// (undefined) when alpha == 0.
struct GreeksReport {
    double price = 0.0;
    double delta = 0.0;
    double bartlett_delta = 0.0;
    double vega = 0.0;
    double bartlett_vega = 0.0;
    double theta_decay = 0.0;
    double gamma = 0.0;
    double vanna = 0.0;
    double volga = 0.0;
    double implied_normal_vol = 0.0;
};

GreeksReport sabr_greeks(const SabrState& state);

/// Two equivalent decompositions of the one-period option P&L for realized
/// moves (dF, dsigma) over dt:
///   drift + bartlett_delta_term + vega_orth_term      (dF and dsigma_orth)
///   drift + delta_orth_term + bartlett_vega_term      (dF_orth and dsigma)
/// where dsigma_orth = dsigma - rho*alpha/C(F)*dF is the volatility move not
/// explained by the forward move, dF_orth = dF - rho*C(F)/alpha*dsigma the
/// converse, and drift carries the time decay and second-order terms. Both
/// martingale parts equal delta*dF + vega*dsigma identically.
struct PnlDecomposition {
    double drift_term = 0.0;
    double bartlett_delta_term = 0.0;
    double vega_orth_term = 0.0;
    double delta_orth_term = 0.0;
    double bartlett_vega_term = 0.0;
    double df_orth = 0.0;
    double dsigma_orth = 0.0;
    double martingale = 0.0;
    double total = 0.0;
};

PnlDecomposition pnl_decompose(const SabrState& state, double d_forward, double d_sigma,
                               double dt);

/// Two-player Shapley split of the martingale P&L between the delta and vega
/// factors:
///   sh_delta = (bartlett_delta*dF + delta*dF_orth) / 2,
///   sh_vega  = (bartlett_vega*dsigma + vega*dsigma_orth) / 2.
/// The two halves sum to the martingale P&L; at rho = 0 the split reduces to
/// (delta*dF, vega*dsigma).
struct DeltaVegaSplit {
    double sh_delta = 0.0;
    double sh_vega = 0.0;
};

DeltaVegaSplit shapley_delta_vega(const SabrState& state, double d_forward, double d_sigma);

/// Multifactor diffusion snapshot at the evaluation point:
///   dX_j = D_j dW_j,  dW_j dW_k = rho_jk dt.
/// `diff_coeffs` holds the D_j values (all > 0, they divide), `sensitivities`
/// the first-order greeks dV/dX_j, `moves` the realized factor changes, and
/// `var_quadratic` the caller's 0.5*var(dX) convexity P&L estimate.
struct FactorDiffusion {
    Eigen::VectorXd diff_coeffs;
    Eigen::MatrixXd corr;
    Eigen::VectorXd sensitivities;
    Eigen::VectorXd moves;
    double var_quadratic = 0.0;

    int size() const { return static_cast<int>(diff_coeffs.size()); }
    void validate() const;
};

/// Correlation-adjusted sensitivities (generalized Bartlett deltas):
///   D_i = delta_i + sum_{j != i} rho_ij * (D_j / D_i) * delta_j,
/// the P&L response to a move in X_i together with the moves it statistically
/// induces in every other factor. Identity correlation returns the plain
/// sensitivities.
Eigen::VectorXd correlation_adjusted_sensitivities(const FactorDiffusion& fd);

/// Per-factor Shapley attribution of realized P&L and its residual.
struct PnlAttribution {
    Eigen::VectorXd per_factor;
    double explained = 0.0;
    double unexplained = 0.0;
};

/// First-order P&L attribution plus the variance-game allocation of the
/// convexity term:
///   Sh_i = (1/n) * (Dadj_i*dX_i + sum_{j != i} delta_j*dX_j_orth)
///          + 0.5 * cov(dX_i, dX),
/// with dX_j_orth = dX_j - rho_ji*(D_j/D_i)*dX_i and cov taken from
/// `cov_of_moves` row sums. `unexplained` is total_pnl minus the explained
/// sum.
PnlAttribution multifactor_attribution(const FactorDiffusion& fd,
                                       const CovStructure& cov_of_moves, double total_pnl);

}  // namespace riskshap
