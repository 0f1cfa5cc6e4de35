"""Gaussian wavefunctional pieces behind the soliton current.

The functional-derivative matrix element is not evaluated symbolically.
Instead :func:`finite_mode_overlap` discretizes the field into momentum modes
and multiplies one-dimensional Gaussian overlaps, with the thin-wall profile
setting how far apart the initial and final centers sit in each mode.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError
from .mathcore import truncated_gaussian_integral
from .models import WashboardParams, pair_separation

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
MIN_CUTOFF = 1e-12


@dataclass(frozen=True)
class WavefunctionalSpec:
    """Gaussian state c * exp(-alpha * (phi - center_phase)^2) per mode."""

    alpha: float
    center_phase: float = 0.0
    momentum_cutoff: float = math.inf

    def __post_init__(self):
        if not self.alpha > 0.0:
            raise DomainError(f"alpha must be positive, got {self.alpha!r}")
        if not self.momentum_cutoff > 0.0:
            raise DomainError(f"momentum_cutoff must be positive, got {self.momentum_cutoff!r}")

    @classmethod
    def for_separation(cls, separation_l: float, center_phase: float = 0.0):
        """State for a pair at separation L: alpha = 1/L, cutoff L^2 / 2 pi."""
        if not separation_l > 0.0:
            raise DomainError(f"separation must be positive, got {separation_l!r}")
        return cls(1.0 / separation_l, center_phase, separation_l**2 / (2.0 * math.pi))


@dataclass(frozen=True)
class FiniteModeGrid:
    k_values: tuple
    l_box: float

    def __post_init__(self):
        k = np.asarray(self.k_values, dtype=float)
        if k.ndim != 1 or k.size == 0:
            raise DomainError("k_values must be a non-empty sequence")
        if np.any(k <= 0.0) or np.any(np.diff(k) <= 0.0):
            raise DomainError("k_values must be positive and strictly increasing")
        if not self.l_box > 0.0:
            raise DomainError(f"l_box must be positive, got {self.l_box!r}")
        object.__setattr__(self, "k_values", tuple(float(v) for v in k))

    @property
    def n_modes(self) -> int:
        return len(self.k_values)

    @classmethod
    def default(cls, separation_l: float, n_modes: int = 64, box_factor: float = 10.0):
        """k_n = 2 pi n / l_box for n = 1..n_modes, with l_box = box_factor * L."""
        if n_modes < 1:
            raise DomainError("n_modes must be at least 1")
        l_box = box_factor * separation_l
        k = 2.0 * math.pi * np.arange(1, n_modes + 1) / l_box
        return cls(tuple(k), l_box)


def thin_wall_profile(k, separation_l: float):
    """Fourier transform of a box of width L: sqrt(2/pi) sin(kL/2) / k."""
    if not separation_l > 0.0:
        raise DomainError(f"separation must be positive, got {separation_l!r}")
    k = np.asarray(k, dtype=float)
    half = 0.5 * separation_l
    # sin(kL/2)/k = (L/2) sinc(kL / 2pi) with numpy's normalized sinc
    out = _SQRT_2_OVER_PI * half * np.sinc(k * half / math.pi)
    return float(out) if out.ndim == 0 else out


def normalization_constant(spec: WavefunctionalSpec) -> float:
    """C = [integral_0^cutoff exp(-2 alpha phi^2) dphi]^(-1/2)."""
    if spec.momentum_cutoff < MIN_CUTOFF:
        raise DomainError(
            f"momentum cutoff {spec.momentum_cutoff!r} too small; normalization diverges"
        )
    return truncated_gaussian_integral(2.0 * spec.alpha, spec.momentum_cutoff) ** -0.5


def assemble_amplitude(c1: float, c2: float, electron_mass: float) -> float:
    """Overall current scale C1 * C2 / (2 m_e)."""
    for name, v in (("c1", c1), ("c2", c2), ("electron_mass", electron_mass)):
        if not v > 0.0:
            raise DomainError(f"{name} must be positive, got {v!r}")
    return c1 * c2 / (2.0 * electron_mass)


def gaussian_overlap(alpha1: float, center1: float, alpha2: float, center2: float) -> float:
    """Overlap of two unit-normalized real Gaussians exp(-alpha (x - center)^2)."""
    return math.exp(_log_gaussian_overlap(alpha1, center1, alpha2, center2))


def _log_gaussian_overlap(alpha1, center1, alpha2, center2):
    asum = alpha1 + alpha2
    prod = alpha1 * alpha2
    dx = center1 - center2
    return 0.5 * np.log(2.0 * np.sqrt(prod) / asum) - prod * dx * dx / asum


def log_finite_mode_overlap(
    initial: WavefunctionalSpec,
    final: WavefunctionalSpec,
    grid: FiniteModeGrid,
    separation_l: float,
) -> float:
    """Natural log of :func:`finite_mode_overlap`; stays finite where the overlap underflows."""
    profile = thin_wall_profile(np.asarray(grid.k_values), separation_l)
    c_i = initial.center_phase * profile
    c_f = final.center_phase * profile
    terms = _log_gaussian_overlap(initial.alpha, c_i, final.alpha, c_f)
    return float(np.sum(np.minimum(terms, 0.0)))


def finite_mode_overlap(
    initial: WavefunctionalSpec,
    final: WavefunctionalSpec,
    grid: FiniteModeGrid,
    separation_l: float,
) -> float:
    """Product over modes of the 1D Gaussian overlaps between the two states.

    In mode k each state is centered at center_phase * thin_wall_profile(k, L),
    so the offset between centers follows the box-shaped phase step.  The
    result lies in (0, 1] and equals 1 only for identical states.
    """
    return math.exp(log_finite_mode_overlap(initial, final, grid, separation_l))


def overlap_field_scan(
    e_grid: Sequence[float],
    base: WashboardParams,
    geometry: tuple = (1.0, 2.0),
    n_modes: int = 64,
) -> list:
    """(E, overlap) pairs, with L(E) from the pair separation and alpha = 1/L.

    ``geometry`` is ``(delta_s, e_star_charge)``.  The initial state sits at
    the false vacuum phase of ``base`` and the final one at its true vacuum.
    """
    e = np.asarray(e_grid, dtype=float)
    if e.ndim != 1 or e.size == 0:
        raise DomainError("e_grid must be a non-empty sequence")
    if np.any(e <= 0.0) or np.any(np.diff(e) <= 0.0):
        raise DomainError("e_grid must be positive and strictly increasing")
    delta_s, e_star_charge = geometry
    out = []
    for ef in e:
        sep = pair_separation(float(ef), delta_s, e_star_charge)
        initial = WavefunctionalSpec.for_separation(sep, base.false_vacuum_phase)
        final = WavefunctionalSpec.for_separation(sep, base.true_vacuum_phase)
        grid = FiniteModeGrid.default(sep, n_modes)
        out.append((float(ef), finite_mode_overlap(initial, final, grid, sep)))
    return out
