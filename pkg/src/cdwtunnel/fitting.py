"""Least-squares fits of the current models and curve-shape comparisons."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import optimize

from .errors import InputError
from .models import SolitonCurrentParams, ZenerParams, soliton_current, zener_current

MODEL_KINDS = ("soliton", "zener")
MIN_POINTS = {"soliton": 3, "zener": 2}


@dataclass(frozen=True)
class IEDataset:
    """Current vs. field samples, sorted by field on construction."""

    e_field: np.ndarray
    current: np.ndarray
    label: str = ""

    def __post_init__(self):
        e = np.asarray(self.e_field, dtype=float).ravel()
        i = np.asarray(self.current, dtype=float).ravel()
        if e.size == 0:
            raise InputError("dataset is empty")
        if e.size != i.size:
            raise InputError(f"{e.size} field values but {i.size} current values")
        if not (np.all(np.isfinite(e)) and np.all(np.isfinite(i))):
            raise InputError("dataset contains non-finite values")
        if np.any(e < 0.0):
            raise InputError("field values must be nonnegative")
        order = np.argsort(e, kind="stable")
        e, i = e[order], i[order]
        if np.any(np.diff(e) <= 0.0):
            raise InputError("field values must be distinct")
        object.__setattr__(self, "e_field", e)
        object.__setattr__(self, "current", i)

    @classmethod
    def from_points(cls, points, label=""):
        points = list(points)
        if not points:
            raise InputError("dataset is empty")
        e, i = zip(*points)
        return cls(np.array(e), np.array(i), label)

    @property
    def points(self):
        return list(zip(self.e_field.tolist(), self.current.tolist()))

    def __len__(self):
        return self.e_field.size

    @classmethod
    def read_csv(cls, path, label=None):
        """Read a two-column CSV with an ``E,I`` header."""
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        if not rows:
            raise InputError(f"{path}: empty file")
        header = [h.strip() for h in rows[0]]
        if header[:2] != ["E", "I"]:
            raise InputError(f"{path}: expected header 'E,I', got {','.join(header)!r}")
        try:
            pts = [(float(r[0]), float(r[1])) for r in rows[1:] if r]
        except (ValueError, IndexError) as exc:
            raise InputError(f"{path}: malformed row ({exc})") from None
        return cls.from_points(pts, str(path) if label is None else label)


@dataclass(frozen=True)
class FitOptions:
    max_iterations: int = 2000
    tolerance: float = 1e-10
    restarts: int = 4
    param_lower_bound: float = 1e-9
    seed: int = 0
    # E_T and c_V enter the soliton current only as a product, so one of
    # them has to be pinned; c_V is held here and E_T absorbs the rest.
    fixed_cv: float = 1.0

    def __post_init__(self):
        if not self.tolerance > 0.0:
            raise InputError("tolerance must be positive")
        if self.max_iterations < 1:
            raise InputError("max_iterations must be at least 1")
        if self.restarts < 0:
            raise InputError("restarts must be nonnegative")
        if not self.param_lower_bound > 0.0:
            raise InputError("param_lower_bound must be positive")
        if not self.fixed_cv > 0.0:
            raise InputError("fixed_cv must be positive")


@dataclass(frozen=True)
class FitResult:
    model_kind: str
    params: object
    sum_squared_residual: float
    iterations: int
    converged: bool

    def to_dict(self):
        if self.model_kind == "soliton":
            params = {
                "amplitude_c1_tilde": self.params.amplitude_c1_tilde,
                "threshold_field_et": self.params.threshold_field_et,
                "cv": self.params.cv,
            }
        else:
            params = {
                "conductance_gp": self.params.conductance_gp,
                "threshold_field_et": self.params.threshold_field_et,
            }
        return {
            "model_kind": self.model_kind,
            "params": params,
            "sum_squared_residual": self.sum_squared_residual,
            "iterations": self.iterations,
            "converged": self.converged,
        }


@dataclass(frozen=True)
class Comparison:
    soliton: FitResult
    zener: FitResult
    preferred: str
    tie: bool = False

    def __iter__(self):
        return iter((self.soliton, self.zener, self.preferred))

    def to_dict(self):
        return {
            "soliton": self.soliton.to_dict(),
            "zener": self.zener.to_dict(),
            "preferred": self.preferred,
            "tie": self.tie,
        }


def knee_field(e, i):
    """Field at the largest second difference of the current."""
    if e.size < 3:
        return float(e[-1]) if e[-1] > 0 else 1.0
    k = int(np.argmax(np.diff(i, 2))) + 1
    return float(e[k]) if e[k] > 0 else float(e[e > 0][0])


def _initial_guess(kind, e, i, cv):
    et = knee_field(e, i)
    e_last, i_last = float(e[-1]), float(i[-1])
    scale = i_last if i_last > 0 else float(np.max(np.abs(i))) or 1.0
    if kind == "soliton":
        shape = soliton_current(e_last, SolitonCurrentParams(1.0, et / cv, cv)) if e_last > 0 else 0.0
        amp = scale / shape if shape > 0 else scale
        return np.array([amp, et / cv])
    shape = zener_current(e_last, ZenerParams(1.0, et))
    if shape <= 0:
        et = 0.5 * e_last if e_last > 0 else 1.0
        shape = zener_current(e_last, ZenerParams(1.0, et))
    amp = scale / shape if shape > 0 else scale
    return np.array([amp, et])


def _make_params(kind, theta, cv):
    a, et = np.exp(theta)
    if kind == "soliton":
        return SolitonCurrentParams(float(a), float(et), cv)
    return ZenerParams(float(a), float(et))


def fit_model(data: IEDataset, kind: str, opts: FitOptions = FitOptions()) -> FitResult:
    """Least-squares fit of one current model by bounded Nelder-Mead.

    Parameters are optimized in log space so they stay positive.  The first
    run starts from a heuristic guess (knee of the curve for E_T, amplitude
    matched at the last point); each restart starts from the best point so
    far with a seeded log-normal perturbation.  The best run is returned.
    """
    if kind not in MODEL_KINDS:
        raise InputError(f"unknown model kind {kind!r}")
    if len(data) < MIN_POINTS[kind]:
        raise InputError(
            f"{kind} fit needs at least {MIN_POINTS[kind]} points, got {len(data)}"
        )
    e, i = data.e_field, data.current
    cv = opts.fixed_cv
    model = soliton_current if kind == "soliton" else zener_current
    scale = float(np.dot(i, i)) or 1.0

    def objective(theta):
        with np.errstate(over="ignore", invalid="ignore"):
            r = model(e, _make_params(kind, theta, cv)) - i
            val = float(np.dot(r, r)) / scale
        return val if math.isfinite(val) else math.inf

    lower = math.log(opts.param_lower_bound)
    bounds = [(lower, None)] * 2
    rng = np.random.default_rng(opts.seed)
    start = np.maximum(np.log(_initial_guess(kind, e, i, cv)), lower)

    best = None
    for run in range(opts.restarts + 1):
        if run:
            start = np.maximum(best.x + rng.normal(0.0, 0.5, size=2), lower)
        res = optimize.minimize(
            objective,
            start,
            method="Nelder-Mead",
            bounds=bounds,
            options={
                "maxiter": opts.max_iterations,
                "maxfev": 4 * opts.max_iterations,
                "xatol": 1e-10,
                "fatol": opts.tolerance,
            },
        )
        if best is None or res.fun < best.fun:
            best = res

    return FitResult(
        model_kind=kind,
        params=_make_params(kind, best.x, cv),
        sum_squared_residual=float(best.fun) * scale,
        iterations=int(best.nit),
        converged=bool(best.success),
    )


def compare_models(data: IEDataset, opts: FitOptions = FitOptions()) -> Comparison:
    """Fit both models; prefer the smaller residual, soliton on a tie."""
    sol = fit_model(data, "soliton", opts)
    zen = fit_model(data, "zener", opts)
    a, b = sol.sum_squared_residual, zen.sum_squared_residual
    tie = math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-300)
    preferred = "soliton" if tie or a < b else "zener"
    return Comparison(sol, zen, preferred, tie)


def _xy(curve):
    arr = np.asarray(curve, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InputError("curve must be a sequence of (x, y) pairs")
    return arr[:, 0], arr[:, 1]


def linearity_score(curve: Sequence) -> float:
    """R^2 of the ordinary least-squares line through the curve."""
    x, y = _xy(curve)
    if x.size < 3:
        raise InputError("linearity score needs at least 3 points")
    dx = x - x.mean()
    sxx = float(np.dot(dx, dx))
    if sxx == 0.0:
        raise InputError("x values are all equal")
    dy = y - y.mean()
    syy = float(np.dot(dy, dy))
    if syy == 0.0:
        return 1.0
    sxy = float(np.dot(dx, dy))
    return min(1.0, max(0.0, sxy * sxy / (sxx * syy)))


def _minmax(y):
    lo, hi = float(np.min(y)), float(np.max(y))
    if hi == lo:
        raise InputError("cannot normalize a constant curve")
    return (y - lo) / (hi - lo)


def _slope_correlation(sa, sb):
    if np.array_equal(sa, sb):
        return 1.0
    if np.array_equal(sa, -sb):
        return -1.0
    da, db = sa - sa.mean(), sb - sb.mean()
    na, nb = math.sqrt(float(np.dot(da, da))), math.sqrt(float(np.dot(db, db)))
    if na == 0.0 or nb == 0.0:
        # a straight line has constant slope; fall back to uncentered cosine
        da, db = sa, sb
        na, nb = math.sqrt(float(np.dot(sa, sa))), math.sqrt(float(np.dot(sb, sb)))
    return min(1.0, max(-1.0, float(np.dot(da, db)) / (na * nb)))


def shape_compare(curve_a: Sequence, curve_b: Sequence):
    """Compare two curves sampled on the same x grid after min-max scaling.

    Returns ``(sup_norm_diff, slope_correlation)``: the largest absolute gap
    between the scaled curves and the Pearson correlation of their
    finite-difference slopes.
    """
    xa, ya = _xy(curve_a)
    xb, yb = _xy(curve_b)
    if xa.size < 3 or xb.size < 3:
        raise InputError("shape comparison needs at least 3 points per curve")
    if xa.shape != xb.shape or not np.array_equal(xa, xb):
        raise InputError("curves are not on a common x grid")
    na, nb = _minmax(ya), _minmax(yb)
    sup = float(np.max(np.abs(na - nb)))
    dx = np.diff(xa)
    return sup, _slope_correlation(np.diff(na) / dx, np.diff(nb) / dx)
