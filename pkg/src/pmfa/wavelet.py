"""Periodic orthonormal discrete wavelet transform.

Coefficients are stored in the L^inf-normalized convention

    c_{j,k} = 2^j * integral psi(2^j t - k) f(t) dt,

so that |c_{j,k}| ~ 2^{-h j} near a point of regularity h. A signal of length
2^n is read as samples of f on [0, 1) and yields detail scales j = 0 .. n-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

# Hölder regularity of the Daubechies scaling functions, indexed by the number
# of vanishing moments (Daubechies, Ten Lectures, table 7.3 / asymptotic 0.2075N).
_DB_HOLDER = {
    1: 0.0, 2: 0.550, 3: 1.088, 4: 1.618, 5: 1.969, 6: 2.189,
    7: 2.460, 8: 2.761, 9: 3.073, 10: 3.361,
}


@dataclass(frozen=True)
class FilterBank:
    name: str
    lowpass: np.ndarray
    highpass: np.ndarray
    vanishing_moments: int
    regularity_estimate: float

    def __post_init__(self):
        if len(self.lowpass) != len(self.highpass):
            raise ValueError("lowpass and highpass must have equal length")
        if self.vanishing_moments < 1:
            raise ValueError("vanishing_moments must be >= 1")

    def __len__(self):
        return len(self.lowpass)

    def admissible_for(self, *exponents: float) -> bool:
        """True when the wavelet is smoother than every |exponent| given."""
        return self.regularity_estimate > max(abs(e) for e in exponents)


def _daubechies_lowpass(n_moments: int) -> np.ndarray:
    if n_moments == 1:
        return np.array([1.0, 1.0]) / np.sqrt(2.0)
    # |m0|^2 = cos^{2N}(w/2) P(sin^2(w/2)); factor P and keep the roots inside
    # the unit circle (minimum phase).
    p = [comb(n_moments - 1 + k, k) for k in range(n_moments)]
    y_roots = np.roots(p[::-1])
    z_roots = []
    for y in y_roots:
        # y = (2 - z - 1/z) / 4  <=>  z^2 - (2 - 4y) z + 1 = 0
        z = np.roots([1.0, -(2.0 - 4.0 * y), 1.0])
        z_roots.append(z[np.argmin(np.abs(z))])
    h = np.real(np.poly(z_roots))
    for _ in range(n_moments):
        h = np.convolve(h, [1.0, 1.0])
    h = h / h.sum() * np.sqrt(2.0)
    return h[::-1].copy()


@lru_cache(maxsize=None)
def daubechies(n_moments: int = 8) -> FilterBank:
    """Orthonormal Daubechies bank with ``n_moments`` vanishing moments."""
    if not 1 <= n_moments <= 10:
        raise ValueError("supported orders are 1..10")
    h = _daubechies_lowpass(n_moments)
    n = np.arange(len(h))
    g = (-1.0) ** n * h[::-1]
    name = "haar" if n_moments == 1 else f"db{n_moments}"
    return FilterBank(name, h, g, n_moments, _DB_HOLDER[n_moments])


@dataclass(frozen=True)
class CoefficientField:
    """Wavelet coefficients on the unit interval, scales 0..j_max.

    ``detail[j]`` has 2^j entries; ``approx`` holds the single coarse
    coefficient of the periodized scaling function.
    """

    j_max: int
    detail: tuple
    approx: np.ndarray = field(default_factory=lambda: np.zeros(1))
    normalization: str = "linf"
    filter: str | None = None

    def __post_init__(self):
        detail = tuple(np.asarray(d, dtype=float) for d in self.detail)
        if len(detail) != self.j_max + 1:
            raise ValueError(f"expected {self.j_max + 1} scales, got {len(detail)}")
        for j, d in enumerate(detail):
            if d.shape != (2 ** j,):
                raise ValueError(f"scale {j} must have {2 ** j} entries, got {d.shape}")
            if not np.all(np.isfinite(d)):
                raise ValueError(f"non-finite coefficient at scale {j}")
        object.__setattr__(self, "detail", detail)
        object.__setattr__(self, "approx", np.asarray(self.approx, dtype=float).reshape(1))

    @classmethod
    def zeros(cls, j_max: int, **kw) -> "CoefficientField":
        return cls(j_max, tuple(np.zeros(2 ** j) for j in range(j_max + 1)), **kw)

    def __getitem__(self, j: int) -> np.ndarray:
        return self.detail[j]

    def scaled(self, factor: float) -> "CoefficientField":
        return CoefficientField(self.j_max, tuple(d * factor for d in self.detail),
                                self.approx * factor, self.normalization, self.filter)

    def nonzero_counts(self) -> np.ndarray:
        return np.array([np.count_nonzero(d) for d in self.detail])

    @property
    def n_samples(self) -> int:
        return 2 ** (self.j_max + 1)


def _periodic_index(n: int, length: int) -> np.ndarray:
    # centre the filter on samples (2k, 2k+1) so that coefficient k sits on
    # its own dyadic interval rather than to its right
    k = np.arange(n // 2)[:, None]
    m = np.arange(length)[None, :] - (length // 2 - 1)
    return (2 * k + m) % n


def analyze(signal, bank: FilterBank | None = None) -> CoefficientField:
    """Full pyramid decomposition of a periodic signal of length 2^n, n >= 4."""
    bank = bank or daubechies()
    a = np.asarray(signal, dtype=float)
    n_total = a.size
    if a.ndim != 1 or n_total < 16 or n_total & (n_total - 1):
        raise ValueError(f"signal length must be a power of two >= 16, got {a.shape}")
    levels = n_total.bit_length() - 1
    details = [None] * levels
    for j in range(levels - 1, -1, -1):
        idx = _periodic_index(a.size, len(bank))
        blocks = a[idx]
        details[j] = blocks @ bank.highpass
        a = blocks @ bank.lowpass
    # orthonormal coefficients w relate to the stored ones by c = 2^{j/2} w / sqrt(N)
    inv_root = 1.0 / np.sqrt(n_total)
    detail = tuple(d * (2.0 ** (j / 2) * inv_root) for j, d in enumerate(details))
    return CoefficientField(levels - 1, detail, a * inv_root, "linf", bank.name)


def synthesize(field: CoefficientField, bank: FilterBank | None = None) -> np.ndarray:
    """Inverse of :func:`analyze`."""
    bank = bank or daubechies()
    if field.normalization != "linf":
        raise ValueError(f"unsupported normalization {field.normalization!r}")
    n_total = field.n_samples
    root = np.sqrt(n_total)
    a = field.approx * root
    for j in range(field.j_max + 1):
        d = field.detail[j] * (root * 2.0 ** (-j / 2))
        n = 2 * a.size
        idx = _periodic_index(n, len(bank))
        contrib = a[:, None] * bank.lowpass[None, :] + d[:, None] * bank.highpass[None, :]
        a = np.bincount(idx.ravel(), weights=contrib.ravel(), minlength=n)
    return a
