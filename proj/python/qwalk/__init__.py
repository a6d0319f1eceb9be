"""Discrete-time quantum walk with a time-dependent coin."""

from ._core import (
    AnalyticModel,
    CapacityError,
    CoinSchedule,
    ConfigError,
    ConsistencyError,
    Distribution,
    DomainError,
    FitResult,
    InsufficientData,
    IoError,
    MomentRecord,
    MomentSeries,
    NormalizationError,
    QwalkError,
    ScheduleExhausted,
    WalkerState,
    analytic_amplitudes,
    bessel_j,
    bessel_product_sum,
    bessel_product_sum_closed_form,
    closed_form_moments,
    default_config,
    detect_localization,
    effective_time,
    evolve,
    fit_logarithmic,
    fit_power_law,
    moments,
    predict_regime,
    probability,
    run_config,
    sigma_coefficients,
    smooth,
    snapshot,
    step,
)

__version__ = "0.1.0"
