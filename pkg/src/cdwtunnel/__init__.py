"""Soliton/antisoliton tunneling current for CDW transport, with the Zener
baseline and D+1 dimensional pair creation rates for comparison."""

__version__ = "0.1.0"

from .errors import CDWError, DomainError, InputError, SeriesConvergenceError
from .mathcore import SeriesControl, erf, exp_series_sum, log_cosh_times_exp, truncated_gaussian_integral
from .models import (
    LinRateParams,
    SolitonCurrentParams,
    SolitonProfileParams,
    WashboardParams,
    ZenerParams,
    derive_cv,
    drive_theta,
    energy_gap,
    harmonic_reference,
    lin_rate,
    lin_rate_1d_closed_form,
    log_soliton_current,
    pinning_term,
    quartic_remainder,
    locate_gap_zero,
    pair_separation,
    soliton_current,
    soliton_profile,
    threshold_field,
    washboard_potential,
    washboard_quartic_approx,
    zener_current,
)
from .tunneling import (
    FiniteModeGrid,
    WavefunctionalSpec,
    assemble_amplitude,
    finite_mode_overlap,
    normalization_constant,
    overlap_field_scan,
    thin_wall_profile,
)
from .fitting import (
    Comparison,
    FitOptions,
    FitResult,
    IEDataset,
    compare_models,
    fit_model,
    linearity_score,
    shape_compare,
)
