"""Dyadic intervals of the periodized unit interval.

An index ``(j, k)`` stands for ``[k 2^-j, (k+1) 2^-j)``. The tripled interval
``3λ`` is ``λ`` together with its two neighbours, taken modulo 1.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np


class DyadicIndex(NamedTuple):
    j: int
    k: int

    @property
    def interval(self) -> tuple[float, float]:
        w = 2.0 ** -self.j
        return self.k * w, (self.k + 1) * w


def _check(j: int, k: int | None = None) -> None:
    if j < 0:
        raise ValueError(f"scale must be >= 0, got {j}")
    if k is not None and not 0 <= k < 2 ** j:
        raise ValueError(f"position {k} out of range at scale {j}")


def locate(x0: float, j: int) -> DyadicIndex:
    """Index of the width-2^-j dyadic interval containing ``x0``."""
    _check(j)
    if not 0.0 <= x0 < 1.0:
        raise ValueError(f"x0 must lie in [0, 1), got {x0}")
    k = math.floor(x0 * 2 ** j)
    # floating point can push x0 * 2^j up to exactly 2^j for x0 just below 1
    return DyadicIndex(j, min(k, 2 ** j - 1))


def neighbour_positions(j: int, k: np.ndarray | int) -> np.ndarray:
    """Positions k-1, k, k+1 at scale j, wrapped modulo 2^j (may repeat when j < 2)."""
    n = 2 ** j
    k = np.asarray(k)
    return np.stack([(k - 1) % n, k % n, (k + 1) % n], axis=-1)


def children_in_3lambda(parent: DyadicIndex, j_child: int) -> np.ndarray:
    """Sorted positions k' at scale ``j_child`` whose interval lies inside 3λ.

    Wraparound is periodic, so at scales 0 and 1 the three neighbours collapse
    and the result is every position at ``j_child``.
    """
    j, k = parent
    _check(j, k)
    if j_child < j:
        raise ValueError("j_child must be >= parent scale")
    n_child = 2 ** j_child
    width = 2 ** (j_child - j)
    start = (k - 1) * width
    ks = np.arange(start, start + 3 * width) % n_child
    return np.unique(ks)
