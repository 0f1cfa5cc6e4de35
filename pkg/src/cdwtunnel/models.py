"""Closed-form models for CDW transport and vacuum pair creation.

Current models
    :func:`soliton_current`  soliton/antisoliton tunneling current with a
                              built-in threshold
    :func:`zener_current`    phenomenological Zener form, cut to zero at E_T

Pair creation
    :func:`lin_rate`         pair creation rate per unit volume in D+1
                              dimensions for a pure electric field

Washboard potential and geometry
    :func:`washboard_potential`, :func:`washboard_quartic_approx`,
    :func:`drive_theta`, :func:`threshold_field`, :func:`energy_gap`,
    :func:`locate_gap_zero`, :func:`pair_separation`,
    :func:`harmonic_reference`, :func:`derive_cv`, :func:`soliton_profile`

Current functions accept scalars or numpy arrays and return the same kind.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .errors import DomainError
from .mathcore import DEFAULT_SERIES, SeriesControl, exp_series_sum, log_cosh_times_exp

TWO_PI = 2.0 * math.pi

# Bounds on mu_E / (D omega_p^2) reported for real devices.
EXPERIMENTAL_RATIO_RANGE = (0.01, 0.015)


def _positive(name, value):
    if not value > 0.0:
        raise DomainError(f"{name} must be positive, got {value!r}")


def _field_array(e_field, allow_zero=True):
    arr = np.asarray(e_field, dtype=float)
    bad = arr < 0.0 if allow_zero else arr <= 0.0
    if np.any(bad) or np.any(np.isnan(arr)):
        kind = "nonnegative" if allow_zero else "positive"
        raise DomainError(f"electric field must be {kind}, got {e_field!r}")
    return arr


def _unwrap(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


@dataclass(frozen=True)
class SolitonCurrentParams:
    amplitude_c1_tilde: float = 1.0
    threshold_field_et: float = 1.0
    cv: float = 1.0

    def __post_init__(self):
        _positive("amplitude_c1_tilde", self.amplitude_c1_tilde)
        _positive("threshold_field_et", self.threshold_field_et)
        _positive("cv", self.cv)

    @property
    def activation_field(self):
        """E_T * c_V, the only combination of the two that the current sees."""
        return self.threshold_field_et * self.cv


@dataclass(frozen=True)
class ZenerParams:
    conductance_gp: float = 1.0
    threshold_field_et: float = 1.0

    def __post_init__(self):
        _positive("conductance_gp", self.conductance_gp)
        _positive("threshold_field_et", self.threshold_field_et)


@dataclass(frozen=True)
class LinRateParams:
    dimension_d: int = 1
    charge_e: float = 1.0
    mass_m: float = 1.0
    series: SeriesControl = field(default_factory=lambda: DEFAULT_SERIES)

    def __post_init__(self):
        if self.dimension_d not in (1, 2, 3):
            raise DomainError(f"dimension_d must be 1, 2 or 3, got {self.dimension_d!r}")
        _positive("charge_e", self.charge_e)
        _positive("mass_m", self.mass_m)


@dataclass(frozen=True)
class WashboardParams:
    """Washboard potential 0.5*mu_E*(phi - theta)^2 + 0.5*D*w_p^2*(1 - cos phi).

    ``pinning_coefficient`` is the pinning energy D*w_p^2 (D being the
    Frohlich mass parameter, not a dimension).  With ``mode="experimental"``
    the ratio mu_E / (D*w_p^2) must fall in (0.01, 0.015].
    """

    pinning_coefficient: float = 100.0
    electrostatic_mu_e: float = 1.0
    e_star_field: float = 2.0
    false_vacuum_phase: float = 0.0
    true_vacuum_phase: float = TWO_PI
    mode: str = "free"

    def __post_init__(self):
        _positive("pinning_coefficient", self.pinning_coefficient)
        _positive("electrostatic_mu_e", self.electrostatic_mu_e)
        _positive("e_star_field", self.e_star_field)
        if self.mode not in ("free", "experimental"):
            raise DomainError(f"mode must be 'free' or 'experimental', got {self.mode!r}")
        if self.mode == "experimental":
            lo, hi = EXPERIMENTAL_RATIO_RANGE
            ratio = self.electrostatic_mu_e / self.pinning_coefficient
            if not lo < ratio <= hi:
                raise DomainError(
                    f"mu_E / (D w_p^2) = {ratio:.6g} outside the experimental range ({lo}, {hi}]"
                )


@dataclass(frozen=True)
class SolitonProfileParams:
    steepness_b: float = 1.0
    center_a: float = -10.0
    center_b: float = 10.0

    def __post_init__(self):
        _positive("steepness_b", self.steepness_b)
        if not self.center_a < self.center_b:
            raise DomainError("center_a must be smaller than center_b")


# -- current models ---------------------------------------------------------

def log_soliton_current(e_field, p: SolitonCurrentParams):
    """Natural log of :func:`soliton_current`; -inf at E = 0.

    Finite for every E > 0, including fields where the current itself
    underflows.
    """
    e = _field_array(e_field)
    a = p.activation_field
    out = np.full_like(e, -np.inf)
    pos = e > 0.0
    if np.any(pos):
        ep = e[pos]
        arg = np.sqrt(2.0 * ep / a) - np.sqrt(a / ep)
        out[pos] = math.log(p.amplitude_c1_tilde) + log_cosh_times_exp(arg, -a / ep)
    return _unwrap(out)


def soliton_current(e_field, p: SolitonCurrentParams):
    """S-S' pair current

        C1 * cosh(sqrt(2E/(E_T c_V)) - sqrt(E_T c_V/E)) * exp(-E_T c_V/E)

    evaluated in log space.  E = 0 returns the analytic limit 0.
    """
    e = _field_array(e_field)
    a = p.activation_field
    out = np.zeros_like(e)
    pos = e > 0.0
    if np.any(pos):
        ep = e[pos]
        arg = np.sqrt(2.0 * ep / a) - np.sqrt(a / ep)
        out[pos] = p.amplitude_c1_tilde * np.exp(log_cosh_times_exp(arg, -a / ep))
    return _unwrap(out)


def zener_current(e_field, p: ZenerParams):
    """G_p (E - E_T) exp(-E_T/E) above threshold, exactly zero at or below it."""
    e = _field_array(e_field)
    et = p.threshold_field_et
    out = np.zeros_like(e)
    above = e > et
    if np.any(above):
        ea = e[above]
        out[above] = p.conductance_gp * (ea - et) * np.exp(-et / ea)
    return _unwrap(out)


def lin_rate(e_field: float, p: LinRateParams = LinRateParams()) -> float:
    """Pair creation rate per unit volume in D+1 dimensions.

    (1 + [D == 3]) |eE|^((D+1)/2) / (2 pi)^D * sum_n n^(-(D+1)/2) exp(-n pi m^2 / |eE|)

    Returns 0.0 when exp(-pi m^2/|eE|) underflows.
    """
    if not e_field > 0.0:
        raise DomainError(f"electric field must be positive, got {e_field!r}")
    d = p.dimension_d
    ee = abs(p.charge_e * e_field)
    s = 0.5 * (d + 1)
    x = math.exp(-math.pi * p.mass_m**2 / ee)
    if x == 0.0:
        return 0.0
    series = exp_series_sum(s, x, p.series).value
    doubling = 2.0 if d == 3 else 1.0
    return doubling * ee**s / TWO_PI**d * series


def lin_rate_1d_closed_form(e_field: float) -> float:
    """-(E / 2 pi) ln(1 - exp(-pi/E)), the D = 1 rate with e = m = 1."""
    if not e_field > 0.0:
        raise DomainError(f"electric field must be positive, got {e_field!r}")
    return -e_field / TWO_PI * math.log1p(-math.exp(-math.pi / e_field))


# -- washboard potential ----------------------------------------------------

def pinning_term(phi, p: WashboardParams):
    """Periodic part 0.5*D*w_p^2*(1 - cos phi), as D*w_p^2*sin^2(phi/2)."""
    phi = np.asarray(phi, dtype=float)
    return _unwrap(p.pinning_coefficient * np.sin(0.5 * phi) ** 2)


def washboard_potential(phi, theta, p: WashboardParams):
    phi = np.asarray(phi, dtype=float)
    drive = 0.5 * p.electrostatic_mu_e * (phi - theta) ** 2
    return _unwrap(drive + pinning_term(phi, p))


def washboard_quartic_approx(phi, p: WashboardParams):
    """Quartic Taylor form of the pinning term, 0.5*D*w_p^2*(phi^2/2 - phi^4/24)."""
    phi = np.asarray(phi, dtype=float)
    phi2 = phi * phi
    return _unwrap(0.5 * p.pinning_coefficient * (phi2 / 2.0 - phi2 * phi2 / 24.0))


def quartic_remainder(phi, p: WashboardParams):
    """Exact pinning term minus its quartic form, free of cancellation.

    Below |phi| = 1 the Taylor tail 0.5*D*w_p^2 * sum_{k>=3} (-1)^(k+1) phi^(2k)/(2k)!
    is summed directly; above it the plain difference is accurate.
    """
    phi = np.asarray(phi, dtype=float)
    direct = pinning_term(phi, p) - washboard_quartic_approx(phi, p)
    small = np.abs(phi) < 1.0
    if np.any(small):
        x2 = phi[small] ** 2
        term = x2**3 / 720.0
        tail = np.zeros_like(x2)
        k = 3
        while np.any(np.abs(term) > 1e-18 * np.abs(tail)) or k == 3:
            tail += term
            term = -term * x2 / ((2 * k + 1) * (2 * k + 2))
            k += 1
        direct = np.array(direct, dtype=float, copy=True)
        direct[small] = 0.5 * p.pinning_coefficient * tail
    return _unwrap(direct)


def drive_theta(e_field, p: WashboardParams):
    """Drive phase 2 pi E / E*."""
    e = _field_array(e_field)
    return _unwrap(TWO_PI * e / p.e_star_field)


def threshold_field(p: WashboardParams) -> float:
    return p.e_star_field / 2.0


def energy_gap(e_field, p: WashboardParams):
    """V(phi_F) - V(phi_T) at the drive set by ``e_field``.

    With the default vacua (0 and 2 pi) this is 2 pi mu_E (theta - pi), which
    changes sign at E = E*/2.
    """
    theta = drive_theta(e_field, p)
    return washboard_potential(p.false_vacuum_phase, theta, p) - washboard_potential(
        p.true_vacuum_phase, theta, p
    )


def locate_gap_zero(p: WashboardParams, rtol: float = 1e-12) -> float:
    """Field in (0, E*) where the energy gap changes sign, found by bisection."""
    hi = p.e_star_field
    f_lo, f_hi = energy_gap(0.0, p), energy_gap(hi, p)
    if f_lo * f_hi > 0.0:
        raise DomainError("energy gap does not change sign on [0, E*]")
    return optimize.bisect(lambda e: energy_gap(e, p), 0.0, hi, xtol=1e-300, rtol=rtol)


# -- geometry ---------------------------------------------------------------

def pair_separation(e_field: float, delta_s: float, e_star_charge: float) -> float:
    """S-S' separation L = (2 delta_s / e*) / E."""
    _positive("e_field", e_field)
    _positive("delta_s", delta_s)
    _positive("e_star_charge", e_star_charge)
    return 2.0 * delta_s / e_star_charge / e_field


def harmonic_reference(e_field: float, charge: float, mass: float, omega: float) -> float:
    """Harmonic reference displacement e E / (m w^2)."""
    for name, v in (("e_field", e_field), ("charge", charge), ("mass", mass), ("omega", omega)):
        _positive(name, v)
    return charge * e_field / (mass * omega**2)


def derive_cv(separation_l: float, x_bar: float, e_field: float, e_threshold: float) -> float:
    """c_V from L / x_bar = c_V E_T / E."""
    for name, v in (
        ("separation_l", separation_l),
        ("x_bar", x_bar),
        ("e_field", e_field),
        ("e_threshold", e_threshold),
    ):
        _positive(name, v)
    return separation_l / x_bar * (e_field / e_threshold)


def soliton_profile(x, p: SolitonProfileParams):
    """Kink/antikink phase pi [tanh b(x - x_a) + tanh b(x_b - x)]."""
    x = np.asarray(x, dtype=float)
    b = p.steepness_b
    return _unwrap(math.pi * (np.tanh(b * (x - p.center_a)) + np.tanh(b * (p.center_b - x))))
