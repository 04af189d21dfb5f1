"""Revealed-preference axioms, Konus-Divisia indices and forecasting cones."""

from ._konus import (
    GarpViolation,
    HarpViolation,
    InputError,
    TradeStatistics,
    afriat_numbers,
    counterexample_statistics,
    check_garp,
    check_harp,
    fit_ar,
    forecast_size,
    gamma_coefficients,
    garp_irrationality,
    harp_irrationality,
    harp_multipliers,
    hierarchy,
    kg_membership,
    kh_membership,
    konus_divisia,
    power_estimate,
    synthetic_statistics,
)

__all__ = [
    "GarpViolation",
    "HarpViolation",
    "InputError",
    "TradeStatistics",
    "afriat_numbers",
    "counterexample_statistics",
    "check_garp",
    "check_harp",
    "fit_ar",
    "forecast_size",
    "gamma_coefficients",
    "garp_irrationality",
    "harp_irrationality",
    "harp_multipliers",
    "hierarchy",
    "kg_membership",
    "kh_membership",
    "konus_divisia",
    "power_estimate",
    "synthetic_statistics",
]
