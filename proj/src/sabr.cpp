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

#include "riskshap/sabr.hpp"

#include <cmath>
#include <limits>

namespace riskshap {

namespace {

constexpr double inv_sqrt_2pi = 0.39894228040143267794;

double norm_pdf(double x) { return inv_sqrt_2pi * std::exp(-0.5 * x * x); }
double norm_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

// Relative finite-difference step with an absolute floor.
double fd_step(double x) { return std::max(1e-4 * std::abs(x), 1e-7); }

}  // namespace

void SabrState::validate() const {
    if (!(sigma0 > 0.0)) throw InvalidInput("sigma0 must be positive");
    if (!(alpha >= 0.0)) throw InvalidInput("alpha must be non-negative");
    if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidInput("beta must lie in [0, 1]");
    if (!(std::abs(rho) < 1.0)) throw InvalidInput("rho must lie in (-1, 1)");
    if (!(theta >= 0.0)) throw InvalidInput("theta must be non-negative");
    if (!(tau > 0.0)) throw InvalidInput("tau must be positive");
    if (beta > 0.0 && !(forward + theta > 0.0))
        throw InvalidInput("forward + theta must be positive when beta > 0");
}

double SabrState::backbone() const {
    return beta == 0.0 ? 1.0 : std::pow(forward + theta, beta);
}

double normal_black_price(double tau, double forward, double strike, double sigma_n,
                          OptionKind kind) {
    if (!(tau > 0.0)) throw InvalidInput("tau must be positive");
    if (!(sigma_n > 0.0)) throw InvalidInput("normal volatility must be positive");
    const double st = sigma_n * std::sqrt(tau);
    const double d = (kind == OptionKind::call ? 1.0 : -1.0) * (forward - strike) / st;
    return st * (d * norm_cdf(d) + norm_pdf(d));
}

namespace {

// Normal SABR implied volatility, asymptotic expansion with the backbone
// expanded around the geometric midpoint of the (shifted) forward and strike:
//
//   sigma_N = sigma0 * C(f_mid) * zeta/xhat(zeta) * (1 + correction * tau)
//   zeta    = (alpha / sigma0) * (f - k) / C(f_mid),   f_mid = sqrt(f * k)
//   xhat    = log((sqrt(1 - 2 rho zeta + zeta^2) + zeta - rho) / (1 - rho))
//   correction = (2 g2 - g1^2)/24 * (sigma0 C)^2 + rho alpha sigma0 g1 C / 4
//              + (2 - 3 rho^2)/24 * alpha^2,
//
// where g1 = C'/C and g2 = C''/C at f_mid. At beta = 0 this reduces to the
// exact normal-SABR form with zeta = (alpha/sigma0)(f - k), which is
// symmetric under (K - F, rho) -> (F - K, -rho). Validated against a
// Monte Carlo SABR pricer in tests (tests/test_sabr_mc_oracle.cpp).
double implied_nvol(double forward, double strike, double sigma0, double alpha, double beta,
                    double rho, double theta, double tau) {
    const double f = forward + theta;
    const double k = strike + theta;

    double backbone = 1.0;
    double g1 = 0.0;
    double g2 = 0.0;
    if (beta > 0.0) {
        if (!(f > 0.0 && k > 0.0))
            throw NumericalBreakdown(
                "shifted forward and strike must be positive when beta > 0");
        const double f_mid = std::sqrt(f * k);
        backbone = std::pow(f_mid, beta);
        g1 = beta / f_mid;
        g2 = beta * (beta - 1.0) / (f_mid * f_mid);
    }

    const double zeta = (alpha / sigma0) * (f - k) / backbone;
    double ratio;
    if (std::abs(zeta) < 1e-6) {
        // Series limit of zeta/xhat(zeta) around zeta = 0.
        ratio = 1.0 - 0.5 * rho * zeta + (2.0 - 3.0 * rho * rho) / 12.0 * zeta * zeta;
    } else {
        const double root = std::sqrt(1.0 - 2.0 * rho * zeta + zeta * zeta);
        const double xhat = std::log((root + zeta - rho) / (1.0 - rho));
        if (!std::isfinite(xhat) || xhat == 0.0)
            throw NumericalBreakdown("implied-volatility map degenerated");
        ratio = zeta / xhat;
    }

    const double sc = sigma0 * backbone;
    const double correction = ((2.0 * g2 - g1 * g1) / 24.0 * sc * sc +
                               0.25 * rho * alpha * g1 * sc +
                               (2.0 - 3.0 * rho * rho) / 24.0 * alpha * alpha) *
                              tau;
    const double vol = sc * ratio * (1.0 + correction);
    if (!(vol > 0.0) || !std::isfinite(vol))
        throw NumericalBreakdown("implied normal volatility is not positive");
    return vol;
}

struct BlackPartials {
    double price;
    double dF, dSigma, dTau;
    double dFF, dFSigma, dSigmaSigma;
};

// Analytic partials of the normal Black function in its own arguments.
BlackPartials black_partials(double tau, double forward, double strike, double sigma_n,
                             OptionKind kind) {
    const double sqrt_tau = std::sqrt(tau);
    const double st = sigma_n * sqrt_tau;
    const double d = (forward - strike) / st;
    const double pdf = norm_pdf(d);

    BlackPartials out{};
    if (kind == OptionKind::call) {
        out.price = st * (d * norm_cdf(d) + pdf);
        out.dF = norm_cdf(d);
    } else {
        out.price = st * (-d * norm_cdf(-d) + pdf);
        out.dF = norm_cdf(d) - 1.0;
    }
    out.dSigma = sqrt_tau * pdf;
    out.dTau = 0.5 * sigma_n * pdf / sqrt_tau;
    out.dFF = pdf / st;
    out.dFSigma = -d * pdf / sigma_n;
    out.dSigmaSigma = sqrt_tau * d * d * pdf / sigma_n;
    return out;
}

struct ImpliedVolPartials {
    double value;
    double dF, dSigma0, dTau;
    double dFF, dFSigma0, dSigma0Sigma0;
};

ImpliedVolPartials implied_vol_partials(const SabrState& s) {
    auto iv = [&](double f, double sig, double tau) {
        return implied_nvol(f, s.strike, sig, s.alpha, s.beta, s.rho, s.theta, tau);
    };

    double h_f = fd_step(s.forward);
    if (s.beta > 0.0) h_f = std::min(h_f, 0.49 * (s.forward + s.theta));
    double h_s = std::min(fd_step(s.sigma0), 0.49 * s.sigma0);
    double h_t = std::min(fd_step(s.tau), 0.49 * s.tau);

    ImpliedVolPartials out{};
    out.value = iv(s.forward, s.sigma0, s.tau);

    const double f_up = iv(s.forward + h_f, s.sigma0, s.tau);
    const double f_dn = iv(s.forward - h_f, s.sigma0, s.tau);
    out.dF = (f_up - f_dn) / (2.0 * h_f);
    out.dFF = (f_up - 2.0 * out.value + f_dn) / (h_f * h_f);

    const double s_up = iv(s.forward, s.sigma0 + h_s, s.tau);
    const double s_dn = iv(s.forward, s.sigma0 - h_s, s.tau);
    out.dSigma0 = (s_up - s_dn) / (2.0 * h_s);
    out.dSigma0Sigma0 = (s_up - 2.0 * out.value + s_dn) / (h_s * h_s);

    const double t_up = iv(s.forward, s.sigma0, s.tau + h_t);
    const double t_dn = iv(s.forward, s.sigma0, s.tau - h_t);
    out.dTau = (t_up - t_dn) / (2.0 * h_t);

    const double pp = iv(s.forward + h_f, s.sigma0 + h_s, s.tau);
    const double pm = iv(s.forward + h_f, s.sigma0 - h_s, s.tau);
    const double mp = iv(s.forward - h_f, s.sigma0 + h_s, s.tau);
    const double mm = iv(s.forward - h_f, s.sigma0 - h_s, s.tau);
    out.dFSigma0 = (pp - pm - mp + mm) / (4.0 * h_f * h_s);
    return out;
}

}  // namespace

double sabr_implied_normal_vol(const SabrState& state) {
    state.validate();
    return implied_nvol(state.forward, state.strike, state.sigma0, state.alpha, state.beta,
                        state.rho, state.theta, state.tau);
}

double sabr_option_value(const SabrState& state) {
    return normal_black_price(state.tau, state.forward, state.strike,
                              sabr_implied_normal_vol(state), state.kind);
}

GreeksReport sabr_greeks(const SabrState& state) {
    state.validate();

    const ImpliedVolPartials iv = implied_vol_partials(state);
    const BlackPartials b =
        black_partials(state.tau, state.forward, state.strike, iv.value, state.kind);

    GreeksReport g;
    g.implied_normal_vol = iv.value;
    g.price = b.price;
    g.delta = b.dF + b.dSigma * iv.dF;
    g.vega = b.dSigma * iv.dSigma0;
    g.theta_decay = b.dTau + b.dSigma * iv.dTau;
    g.gamma = b.dFF + 2.0 * b.dFSigma * iv.dF + b.dSigmaSigma * iv.dF * iv.dF +
              b.dSigma * iv.dFF;
    g.vanna = b.dFSigma * iv.dSigma0 + b.dSigmaSigma * iv.dF * iv.dSigma0 +
              b.dSigma * iv.dFSigma0;
    g.volga = b.dSigmaSigma * iv.dSigma0 * iv.dSigma0 + b.dSigma * iv.dSigma0Sigma0;

    const double backbone = state.backbone();
    g.bartlett_delta = g.delta + state.rho * (state.alpha / backbone) * g.vega;
    g.bartlett_vega = state.alpha > 0.0
                          ? g.vega + state.rho * (backbone / state.alpha) * g.delta
                          : std::numeric_limits<double>::quiet_NaN();
    return g;
}

PnlDecomposition pnl_decompose(const SabrState& state, double d_forward, double d_sigma,
                               double dt) {
    if (!(dt >= 0.0)) throw InvalidInput("dt must be non-negative");
    if (!(state.alpha > 0.0))
        throw InvalidInput("P&L decomposition needs alpha > 0 (dF_orth divides by alpha)");

    const GreeksReport g = sabr_greeks(state);
    const double backbone = state.backbone();
    const double sig2 = state.sigma0 * state.sigma0;

    PnlDecomposition out;
    out.dsigma_orth = d_sigma - state.rho * state.alpha / backbone * d_forward;
    out.df_orth = d_forward - state.rho * backbone / state.alpha * d_sigma;
    // Ito drift: the vanna term carries rho * alpha from d<F, sigma>.
    out.drift_term = (-g.theta_decay +
                      0.5 * sig2 *
                          (backbone * backbone * g.gamma +
                           2.0 * state.rho * state.alpha * backbone * g.vanna +
                           state.alpha * state.alpha * g.volga)) *
                     dt;
    out.bartlett_delta_term = g.bartlett_delta * d_forward;
    out.vega_orth_term = g.vega * out.dsigma_orth;
    out.delta_orth_term = g.delta * out.df_orth;
    out.bartlett_vega_term = g.bartlett_vega * d_sigma;
    out.martingale = out.bartlett_delta_term + out.vega_orth_term;
    out.total = out.drift_term + out.martingale;
    return out;
}

DeltaVegaSplit shapley_delta_vega(const SabrState& state, double d_forward, double d_sigma) {
    if (!(state.alpha > 0.0))
        throw InvalidInput("Shapley delta/vega split needs alpha > 0");
    const PnlDecomposition d = pnl_decompose(state, d_forward, d_sigma, 0.0);
    return {0.5 * (d.bartlett_delta_term + d.delta_orth_term),
            0.5 * (d.bartlett_vega_term + d.vega_orth_term)};
}

void FactorDiffusion::validate() const {
    const int n = size();
    if (n < 1) throw InvalidInput("factor diffusion needs at least one factor");
    if (corr.rows() != n || corr.cols() != n)
        throw InvalidInput("correlation matrix dimension does not match factor count");
    if (sensitivities.size() != n || moves.size() != n)
        throw InvalidInput("sensitivity/move vector length does not match factor count");
    if (!diff_coeffs.allFinite() || !corr.allFinite() || !sensitivities.allFinite() ||
        !moves.allFinite())
        throw InvalidInput("factor diffusion contains non-finite entries");

    const double asym = (corr - corr.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) throw InvalidInput("correlation matrix is not symmetric");
    for (int i = 0; i < n; ++i)
        if (std::abs(corr(i, i) - 1.0) > 1e-12)
            throw InvalidInput("correlation matrix diagonal must be 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(corr, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-10 * eig.eigenvalues().maxCoeff())
        throw InvalidInput("correlation matrix is not positive semidefinite");
}

Eigen::VectorXd correlation_adjusted_sensitivities(const FactorDiffusion& fd) {
    fd.validate();
    const int n = fd.size();
    for (int i = 0; i < n; ++i)
        if (!(fd.diff_coeffs(i) > 0.0))
            throw DivisionByZero("diffusion coefficient of factor " + std::to_string(i) +
                                 " is not positive");

    Eigen::VectorXd adjusted(n);
    for (int i = 0; i < n; ++i) {
        double acc = fd.sensitivities(i);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            acc += fd.corr(i, j) * (fd.diff_coeffs(j) / fd.diff_coeffs(i)) *
                   fd.sensitivities(j);
        }
        adjusted(i) = acc;
    }
    return adjusted;
}

PnlAttribution multifactor_attribution(const FactorDiffusion& fd,
                                       const CovStructure& cov_of_moves, double total_pnl) {
    const int n = fd.size();
    if (cov_of_moves.size() != n)
        throw InvalidInput("move covariance dimension does not match factor count");

    const Eigen::VectorXd adjusted = correlation_adjusted_sensitivities(fd);
    const Eigen::VectorXd cov_row_sums = cov_of_moves.sigma().rowwise().sum();

    PnlAttribution out;
    out.per_factor = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        double first_order = adjusted(i) * fd.moves(i);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double move_orth =
                fd.moves(j) -
                fd.corr(j, i) * (fd.diff_coeffs(j) / fd.diff_coeffs(i)) * fd.moves(i);
            first_order += fd.sensitivities(j) * move_orth;
        }
        out.per_factor(i) = first_order / static_cast<double>(n) + 0.5 * cov_row_sums(i);
    }
    out.explained = out.per_factor.sum();
    out.unexplained = total_pnl - out.explained;
    return out;
}

}  // namespace riskshap
