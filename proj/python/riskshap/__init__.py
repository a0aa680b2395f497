"""Shapley-value risk attribution for portfolios.

Python bindings over the C++ core: coalitional-game Shapley engines
(exact, Monte Carlo, two-player), variance/volatility games over a
covariance structure, SABR greeks with Bartlett corrections and P&L
attribution, and historical/parametric VaR and ES attribution.
"""

from ._riskshap import (  # noqa: F401
    Allocation,
    ConfigError,
    CovStructure,
    DeltaVegaSplit,
    EllipticalConstants,
    Error,
    FactorDiffusion,
    Game,
    GreeksReport,
    InputError,
    NumericalError,
    PnlAttribution,
    PnlDecomposition,
    ReturnPanel,
    SabrState,
    __version__,
    correlation_adjusted_sensitivities,
    elliptical_attribution,
    elliptical_constants,
    estimate_cov,
    game_from_callable,
    game_from_table,
    historical_es,
    historical_var,
    make_tail_game,
    multifactor_attribution,
    normal_black_price,
    pnl_decompose,
    sabr_greeks,
    sabr_implied_normal_vol,
    sabr_option_value,
    shapley_delta_vega,
    shapley_exact_permutations,
    shapley_exact_subsets,
    shapley_monte_carlo,
    shapley_two_player,
    simulate_panel,
    tail_attribution_mc,
    transfer_sqrt_approx,
    variance_game,
    variance_shapley_closed_form,
    volatility_game,
    volatility_shapley_approx,
)
