"""Exact gains-from-trade evaluation for bilateral trade on a discrete grid."""

from ._core import (
    MAX_SUPPORT,
    SCALE,
    WORST_CASE_SELLER_HASH,
    ConfigError,
    Distribution,
    FamilyParams,
    FormatError,
    Kind,
    RealPrecision,
    buyer_prices,
    equal_revenue_buyer,
    evaluate,
    evaluate_params,
    format_report,
    load_distribution,
    mixture_seller,
    mixture_seller_real,
    monte_carlo,
    parse_distribution,
    point_mass,
    reference_evaluate,
    round_scaled,
    run_search,
    save_distribution,
    seller_prices,
    uniform_seller,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
