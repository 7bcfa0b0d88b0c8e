"""Structure functions, scaling functions and Legendre spectra of leader fields."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .exponents import (
    DEFAULT_MARGIN,
    EstimationError,
    ScalingFunction,
    concavity_violation,
    default_dq,
    estimate_hmin,
    fit_exponent,
    leader_j_range,
    wavelet_scaling_function,
)
from .leaders import LeaderField, l_leaders, p_leaders
from .wavelet import CoefficientField

DEFAULT_R_GRID = np.arange(-5.0, 5.0 + 1e-9, 0.25)
ZERO_POLICIES = ("exclude-undefined", "strict")


@dataclass(frozen=True)
class StructureFunctions:
    """log2 S(r, j) with S(r, j) = 2^-j * sum over usable leaders of e^r.

    Rows follow ``r_grid``; masked cells are NaN.
    """

    r_grid: np.ndarray
    log_S: np.ndarray
    counts: np.ndarray
    normalization: dict

    @property
    def j_max(self) -> int:
        return self.log_S.shape[1] - 1


@dataclass(frozen=True)
class Spectrum:
    """Discrete Legendre spectrum d(H) = min_r (1 - zeta(r) + H r).

    ``interior`` marks H values whose minimizing r is not a grid endpoint;
    outside it the value is an extrapolation and ``d_support`` reports -inf.
    """

    H: np.ndarray
    d: np.ndarray
    r_of_H: np.ndarray
    interior: np.ndarray
    zeta: ScalingFunction | None = field(default=None, repr=False)
    structure: StructureFunctions | None = field(default=None, repr=False)

    @property
    def d_support(self) -> np.ndarray:
        return np.where(self.interior, self.d, -np.inf)

    @property
    def support(self) -> tuple[float, float] | None:
        idx = np.flatnonzero(self.interior)
        if idx.size == 0:
            return None
        return float(self.H[idx[0]]), float(self.H[idx[-1]])

    @property
    def mode(self) -> tuple[float, float]:
        i = int(np.argmax(self.d))
        return float(self.H[i]), float(self.d[i])

    def at(self, H: float) -> float:
        return float(np.interp(H, self.H, self.d))

    def concavity_violation(self) -> float:
        return concavity_violation(self.H, self.d)


def structure_functions(lead: LeaderField, r_grid=None,
                        zero_policy: str = "exclude-undefined") -> StructureFunctions:
    if zero_policy not in ZERO_POLICIES:
        raise ValueError(f"zero_policy must be one of {ZERO_POLICIES}")
    r_grid = DEFAULT_R_GRID if r_grid is None else np.asarray(r_grid, dtype=float)
    if r_grid.size == 0 or not np.all(np.isfinite(r_grid)):
        raise ValueError("r_grid must be a nonempty finite sequence")
    n_scales = lead.j_max + 1
    log_S = np.full((r_grid.size, n_scales), np.nan)
    counts = np.zeros(n_scales, dtype=int)
    for j, v in enumerate(lead.values):
        ok = np.isfinite(v) & (v > 0)
        counts[j] = int(ok.sum())
        if counts[j] == 0:
            continue
        if zero_policy == "strict" and counts[j] < v.size:
            continue
        logs = np.log(v[ok])
        # log2(2^-j sum e^r), computed in log space for large |r|
        log_S[:, j] = logsumexp(np.outer(r_grid, logs), axis=1) / math.log(2) - j
    if not np.any(np.isfinite(log_S)):
        raise EstimationError("no usable leaders at any scale")
    return StructureFunctions(r_grid, log_S, counts,
                              {"prefactor": "2^-j", "zero_policy": zero_policy})


def scaling_function(S: StructureFunctions, j_range=None) -> ScalingFunction:
    """zeta(r) as the OLS decay exponent of S(r, j) on ``j_range``."""
    j_range = j_range or leader_j_range(S.j_max)
    fits = tuple(fit_exponent(row, j_range) for row in S.log_S)
    return ScalingFunction(S.r_grid, np.array([f.slope for f in fits]), fits, "zeta")


def default_H_grid(zeta: ScalingFunction, n: int = 801) -> np.ndarray:
    slopes = np.diff(zeta.values) / np.diff(zeta.grid)
    lo, hi = float(np.min(slopes)), float(np.max(slopes))
    pad = max(0.1, 0.25 * (hi - lo))
    return np.linspace(lo - pad, hi + pad, n)


def legendre_spectrum(zeta: ScalingFunction, H_grid=None) -> Spectrum:
    """Direct minimum over the r grid of 1 - zeta(r) + H r."""
    H = default_H_grid(zeta) if H_grid is None else np.asarray(H_grid, dtype=float)
    r = zeta.grid
    table = 1.0 - zeta.values[None, :] + H[:, None] * r[None, :]
    idx = np.argmin(table, axis=1)
    d = table[np.arange(H.size), idx]
    interior = (idx > 0) & (idx < r.size - 1)
    return Spectrum(H, d, r[idx], interior, zeta)


def _spectrum_of(lead: LeaderField, r_grid, H_grid, j_range, zero_policy) -> Spectrum:
    S = structure_functions(lead, r_grid, zero_policy)
    zeta = scaling_function(S, j_range)
    spec = legendre_spectrum(zeta, H_grid)
    return Spectrum(spec.H, spec.d, spec.r_of_H, spec.interior, zeta, S)


def p_spectrum(field: CoefficientField, p: float, r_grid=None, H_grid=None, j_range=None,
               zero_policy: str = "exclude-undefined") -> Spectrum:
    """p-spectrum from p-leaders (wavelet leaders when p is infinite)."""
    if math.isinf(p):
        hmin, _ = estimate_hmin(field, j_range)
        if hmin <= 0:
            warnings.warn(f"H_min = {hmin:.3f} <= 0: leader-based analysis not valid",
                          RuntimeWarning, stacklevel=2)
    else:
        eta = wavelet_scaling_function(field, [p], j_range).values[0]
        if eta <= 0:
            warnings.warn(f"eta({p}) = {eta:.3f} <= 0: p-leaders are not valid here",
                          RuntimeWarning, stacklevel=2)
    return _spectrum_of(p_leaders(field, p), r_grid, H_grid, j_range, zero_policy)


def lacunarity_spectrum(field: CoefficientField, q0: float = 0.0, dq: float | None = None,
                        r_grid=None, H_grid=None, j_range=None,
                        zero_policy: str = "exclude-undefined",
                        margin: float | None = None) -> Spectrum:
    """Spectrum of the lacunarity exponent from L-leaders at q0 (+ margin when q0 > 0)."""
    dq = default_dq(q0) if dq is None else dq
    if margin is None:
        margin = DEFAULT_MARGIN if q0 > 0 else 0.0
    lead = l_leaders(field, q0 + margin, dq)
    return _spectrum_of(lead, r_grid, H_grid, j_range, zero_policy)
