"""Wavelet leaders, p-leaders and L-leaders.

All three are built bottom-up: a per-node accumulator over the dyadic subtree
rooted at each interval, then a three-neighbour reduction giving the value over
3λ. Sums run down to the finest available scale. A leader that is exactly zero
(nothing nonzero under 3λ) is stored as NaN and treated as undefined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dyadic import locate
from .wavelet import CoefficientField


@dataclass(frozen=True)
class LeaderField:
    kind: str          # "leader" | "p-leader" | "l-leader"
    params: dict
    values: tuple      # per scale, NaN where undefined

    @property
    def j_max(self) -> int:
        return len(self.values) - 1

    def defined(self, j: int) -> np.ndarray:
        return np.isfinite(self.values[j])

    @property
    def j_range(self) -> tuple[int, int] | None:
        js = [j for j, v in enumerate(self.values) if np.any(np.isfinite(v))]
        return (js[0], js[-1]) if js else None

    def along(self, x0: float) -> np.ndarray:
        """Values on the chain λ_j(x0), j = 0..j_max."""
        return np.array([self.values[j][locate(x0, j).k] for j in range(self.j_max + 1)])

    @property
    def all_undefined(self) -> bool:
        return self.j_range is None


def _pow2_scale(field: CoefficientField) -> float:
    # exact power of two so that rescaling never perturbs mantissas
    m = max((float(np.max(np.abs(d))) for d in field.detail), default=0.0)
    if m == 0.0:
        return 1.0
    return math.ldexp(1.0, math.frexp(m)[1])


def _over_3lambda(node: np.ndarray, reduce) -> np.ndarray:
    n = node.size
    if n == 1:
        return node.copy()
    if n == 2:
        # the three neighbours of either interval are {0, 1}
        return np.full(2, reduce(node[0], node[1]))
    return reduce(reduce(np.roll(node, 1), node), np.roll(node, -1))


def _finalize(values: list[np.ndarray]) -> tuple:
    out = []
    for v in values:
        v = v.astype(float, copy=True)
        v[~(v > 0)] = np.nan
        out.append(v)
    return tuple(out)


def wavelet_leaders(field: CoefficientField) -> LeaderField:
    """d_λ = sup of |c_λ'| over λ' ⊂ 3λ."""
    node = None
    values = [None] * (field.j_max + 1)
    for j in range(field.j_max, -1, -1):
        a = np.abs(field.detail[j])
        if node is not None:
            a = np.maximum(a, np.maximum(node[0::2], node[1::2]))
        node = a
        values[j] = _over_3lambda(node, np.maximum)
    return LeaderField("leader", {"p": math.inf}, _finalize(values))


def p_leaders(field: CoefficientField, p: float) -> LeaderField:
    """d^p_λ = (sum over λ' ⊂ 3λ of |c_λ'|^p 2^{-(j'-j)})^{1/p}; p = inf gives leaders."""
    if math.isinf(p) and p > 0:
        return wavelet_leaders(field)
    if not p > 0:
        raise ValueError(f"p must be > 0, got {p}")
    scale = _pow2_scale(field)
    node = None
    values = [None] * (field.j_max + 1)
    with np.errstate(under="ignore"):
        for j in range(field.j_max, -1, -1):
            t = (np.abs(field.detail[j]) / scale) ** p
            if node is not None:
                t = t + 0.5 * (node[0::2] + node[1::2])
            node = t
            values[j] = _over_3lambda(node, np.add) ** (1.0 / p) * scale
    return LeaderField("p-leader", {"p": float(p)}, _finalize(values))


def l_leaders(field: CoefficientField, q: float, dq: float) -> LeaderField:
    """(d^{1/(q+dq)} / d^{1/q})^{1/dq}; q = 0 uses the wavelet leaders."""
    if not dq > 0:
        raise ValueError(f"dq must be > 0, got {dq}")
    if q < 0:
        raise ValueError(f"q must be >= 0, got {q}")
    base = wavelet_leaders(field) if q == 0 else p_leaders(field, 1.0 / q)
    shifted = p_leaders(field, 1.0 / (q + dq))
    values = []
    with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
        for b, s in zip(base.values, shifted.values):
            # ratio first, then the power, to keep the log-scale spread small
            v = (s / b) ** (1.0 / dq)
            v[~np.isfinite(v)] = np.nan
            values.append(v)
    return LeaderField("l-leader", {"q": float(q), "dq": float(dq)}, _finalize(values))
