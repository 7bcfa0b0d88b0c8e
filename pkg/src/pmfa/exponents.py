"""Global and pointwise regularity estimators.

Every liminf of the form log(X_j) / log(2^-j) is estimated as an ordinary
least-squares slope of log2 X_j against -j over a scale range [j1, j2].
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .leaders import LeaderField, l_leaders, p_leaders, wavelet_leaders
from .wavelet import CoefficientField

DEFAULT_J1 = 3
DEFAULT_MARGIN = 0.2
DEFAULT_DQ = 0.05
DEFAULT_DQ_AT_ZERO = 0.5


class EstimationError(RuntimeError):
    """Raised when a regression cannot be formed from the available scales."""


@dataclass(frozen=True)
class RegressionFit:
    slope: float
    intercept: float
    j_range: tuple[int, int]
    residual_rms: float
    points_used: int

    def as_dict(self) -> dict:
        return {"slope": self.slope, "intercept": self.intercept,
                "j_range": list(self.j_range), "residual_rms": self.residual_rms,
                "points_used": self.points_used}


def default_j_range(j_max: int) -> tuple[int, int]:
    """Scale range for coefficient-based fits: drops the coarsest and the two finest scales."""
    if j_max - 2 - DEFAULT_J1 < 2:
        return 0, j_max
    return DEFAULT_J1, j_max - 2


def leader_j_range(j_max: int) -> tuple[int, int]:
    """Scale range for leader-based fits.

    A leader at scale j sums over the j_max - j finer scales only, so the
    finest scales are truncated more heavily than for raw coefficients.
    """
    if j_max - 4 - DEFAULT_J1 < 2:
        return default_j_range(j_max)
    return DEFAULT_J1, j_max - 4


def default_dq(q0: float) -> float:
    # at q0 = 0 the sup-leader is compared with a moderate p = 1/dq
    return DEFAULT_DQ_AT_ZERO if q0 == 0 else DEFAULT_DQ


def fit_exponent(log2_values, j_range: tuple[int, int]) -> RegressionFit:
    """Slope of ``log2_values[j]`` against -j on ``j_range``, skipping non-finite entries.

    ``intercept`` is the fitted log2 value at j = 0.
    """
    y = np.asarray(log2_values, dtype=float)
    j1, j2 = j_range
    j2 = min(j2, y.size - 1)
    if j1 < 0 or j1 >= j2:
        raise EstimationError(f"invalid scale range ({j1}, {j2})")
    js = np.arange(j1, j2 + 1)
    ys = y[j1:j2 + 1]
    ok = np.isfinite(ys)
    if ok.sum() < 3:
        raise EstimationError(f"only {int(ok.sum())} usable scales in [{j1}, {j2}]; need 3")
    x, ys = -js[ok].astype(float), ys[ok]
    xm, ym = x.mean(), ys.mean()
    slope = float(np.sum((x - xm) * (ys - ym)) / np.sum((x - xm) ** 2))
    intercept = float(ym - slope * xm)
    resid = ys - (intercept + slope * x)
    return RegressionFit(slope, intercept, (int(js[ok][0]), int(js[ok][-1])),
                         float(np.sqrt(np.mean(resid ** 2))), int(ok.sum()))


def concavity_violation(x, y) -> float:
    """Largest amount by which a point sits below the chord of its neighbours.

    Scaled so that on a uniform grid it equals the second difference
    y[i-1] - 2 y[i] + y[i+1]. Non-positive for concave data.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ok = np.isfinite(y)
    x, y = x[ok], y[ok]
    if x.size < 3:
        return 0.0
    w = (x[2:] - x[1:-1]) / (x[2:] - x[:-2])
    chord = w * y[:-2] + (1 - w) * y[2:]
    return float(np.max(2.0 * (chord - y[1:-1])))


@dataclass(frozen=True)
class ScalingFunction:
    """Samples of eta(p) or zeta(r) with the regression behind each value."""

    grid: np.ndarray
    values: np.ndarray
    fits: tuple = field(repr=False)
    kind: str = "eta"

    def __call__(self, x: float) -> float:
        return float(np.interp(x, self.grid, self.values))

    def concavity_violation(self) -> float:
        return concavity_violation(self.grid, self.values)


def _log2_sum_pow(c: np.ndarray, p: float) -> float:
    a = np.abs(c)
    a = a[a > 0]
    m = a.max() if a.size else 0.0
    if m == 0.0:
        return -math.inf
    with np.errstate(under="ignore"):
        return math.log2(np.sum((a / m) ** p)) + p * math.log2(m)


def estimate_hmin(field: CoefficientField, j_range=None) -> tuple[float, RegressionFit]:
    """Uniform Hölder exponent from the decay of sup_k |c_{j,k}|."""
    j_range = j_range or default_j_range(field.j_max)
    with np.errstate(divide="ignore"):
        y = np.array([np.log2(np.max(np.abs(d))) for d in field.detail])
    j1, j2 = j_range
    if np.any(np.isneginf(y[j1:j2 + 1])):
        raise EstimationError("all-zero scale inside the regression range")
    fit = fit_exponent(y, j_range)
    return fit.slope, fit


def log2_wavelet_structure(field: CoefficientField, p: float) -> np.ndarray:
    """log2(2^-j sum_k |c_{j,k}|^p) for every scale."""
    return np.array([_log2_sum_pow(d, p) - j for j, d in enumerate(field.detail)])


def wavelet_scaling_function(field: CoefficientField, p_grid: Sequence[float],
                             j_range=None) -> ScalingFunction:
    """eta(p): scale decay exponent of 2^-j sum_k |c_{j,k}|^p."""
    p_grid = np.asarray(p_grid, dtype=float)
    if np.any(p_grid <= 0):
        raise ValueError("p_grid must be strictly positive")
    j_range = j_range or default_j_range(field.j_max)
    fits = tuple(fit_exponent(log2_wavelet_structure(field, p), j_range) for p in p_grid)
    values = np.array([f.slope for f in fits])
    ratio = values / p_grid
    if np.any(np.diff(ratio) > 0.05):
        warnings.warn("eta(p)/p is not nonincreasing on the grid", RuntimeWarning, stacklevel=2)
    return ScalingFunction(p_grid, values, fits, "eta")


def critical_lebesgue_index(sf: ScalingFunction) -> tuple[float, float]:
    """Bracket (lower, upper) on p0 from the first sign change of eta.

    A transversal crossing is located by linear interpolation and returned as a
    degenerate bracket. Eta positive everywhere gives (max grid, inf).
    """
    order = np.argsort(sf.grid)
    p, eta = sf.grid[order], sf.values[order]
    negative = np.flatnonzero(eta < 0)
    if negative.size == 0:
        return float(p[-1]), math.inf
    i = int(negative[0])
    if i == 0:
        return 0.0, float(p[0])
    if eta[i - 1] > 0:
        root = p[i - 1] + eta[i - 1] * (p[i] - p[i - 1]) / (eta[i - 1] - eta[i])
        return float(root), float(root)
    positive = np.flatnonzero(eta[:i] > 0)
    lower = float(p[positive[-1]]) if positive.size else 0.0
    return lower, float(p[i])


def pointwise_p_exponent(lead: LeaderField, x0: float, j_range=None) -> tuple[float, RegressionFit]:
    """Decay exponent of the leaders along the chain λ_j(x0)."""
    if lead.kind not in ("leader", "p-leader"):
        raise ValueError(f"expected wavelet leaders or p-leaders, got {lead.kind}")
    return _along_fit(lead, x0, j_range)


def _along_fit(lead: LeaderField, x0: float, j_range) -> tuple[float, RegressionFit]:
    j_range = j_range or leader_j_range(lead.j_max)
    with np.errstate(divide="ignore", invalid="ignore"):
        y = np.log2(lead.along(x0))
    fit = fit_exponent(y, j_range)
    return fit.slope, fit


@dataclass(frozen=True)
class ExponentCurve:
    """Pointwise exponent h^{1/q}(x0) sampled on a q grid."""

    q: np.ndarray
    h: np.ndarray
    fits: tuple = field(repr=False)

    def affine(self) -> tuple[float, float]:
        """(slope, intercept) of a least-squares line through (q, h)."""
        slope, intercept = np.polyfit(self.q, self.h, 1)
        return float(slope), float(intercept)

    def concavity_violation(self) -> float:
        return concavity_violation(self.q, self.h)

    def __iter__(self):
        return iter(zip(self.q.tolist(), self.h.tolist()))


def p_exponent_curve(field: CoefficientField, x0: float, q_grid: Sequence[float],
                     j_range=None) -> ExponentCurve:
    """q -> h^{1/q}(x0); q = 0 is estimated from the wavelet leaders."""
    q_grid = np.asarray(q_grid, dtype=float)
    if np.any(q_grid < 0):
        raise ValueError("q_grid must be >= 0")
    hs, fits = [], []
    for q in q_grid:
        lead = wavelet_leaders(field) if q == 0 else p_leaders(field, 1.0 / q)
        h, fit = pointwise_p_exponent(lead, x0, j_range)
        hs.append(h)
        fits.append(fit)
    return ExponentCurve(q_grid, np.array(hs), tuple(fits))


def pointwise_lacunarity(field: CoefficientField, x0: float, q0: float, dq: float | None = None,
                         j_range=None, margin: float | None = None) -> tuple[float, RegressionFit]:
    """Right derivative of q -> h^{1/q}(x0) at q0 from the decay of L-leaders.

    When ``q0 > 0`` the L-leaders are taken at ``q0 + margin`` since the
    p-exponent is not defined at p0 itself.
    """
    dq = default_dq(q0) if dq is None else dq
    if margin is None:
        margin = DEFAULT_MARGIN if q0 > 0 else 0.0
    lead = l_leaders(field, q0 + margin, dq)
    return _along_fit(lead, x0, j_range)


def sparsity_exponent(field: CoefficientField, j_range=None) -> tuple[float, RegressionFit]:
    """Growth rate s of the number of nonzero coefficients, count_j ~ 2^{s j}.

    s < 1 means a sparse expansion, for which eta(p) > 0 at small p.
    """
    j_range = j_range or default_j_range(field.j_max)
    with np.errstate(divide="ignore"):
        y = np.log2(field.nonzero_counts().astype(float))
    y[np.isneginf(y)] = np.nan
    fit = fit_exponent(y, j_range)
    # fit_exponent regresses on -j
    return -fit.slope, fit
