"""Synthetic signals with closed-form regularity.

Each generator returns the data together with a :class:`GroundTruth` that
records the theoretical exponents used by the tests and the CLI report.
Coefficient-domain generators take ``J`` as log2 of the sample count, so the
resulting field has finest scale ``J - 1``, the same as :func:`analyze` on a
length-2^J signal.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from .wavelet import CoefficientField, FilterBank, analyze

CUSP_DECAY = 6


@dataclass
class GroundTruth:
    """Theoretical regularity of a generated signal.

    ``p_exponent`` is ``(intercept, slope)`` of the affine map q -> h^{1/q}(x0),
    ``eta`` is ``(intercept, slope)`` of p -> eta(p) when that is affine.
    """

    generator: str
    params: dict
    x0: float | None = None
    p_exponent: tuple[float, float] | None = None
    lacunarity: float | None = None
    p0: float | None = None
    eta: tuple[float, float] | None = None
    hmin: float | None = None
    spectra: dict | None = None
    extra: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict, repr=False)

    def h_of_q(self, q: float) -> float:
        a, s = self.p_exponent
        return a + s * q

    def eta_of_p(self, p: float) -> float:
        a, s = self.eta
        return a + s * p

    @property
    def q0(self) -> float:
        if self.p0 is None or math.isinf(self.p0):
            return 0.0
        return 1.0 / self.p0

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("diagnostics")
        return _jsonable(d)

    @classmethod
    def from_dict(cls, d: dict) -> "GroundTruth":
        d = {k: _from_jsonable(v) for k, v in d.items() if k in cls.__dataclass_fields__}
        for key in ("p_exponent", "eta"):
            if d.get(key) is not None:
                d[key] = tuple(d[key])
        return cls(**d)


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        if math.isnan(v):
            return "nan"
    if isinstance(v, np.integer):
        return int(v)
    return v


def _from_jsonable(v):
    if isinstance(v, dict):
        return {k: _from_jsonable(x) for k, x in v.items()}
    if isinstance(v, list):
        return [_from_jsonable(x) for x in v]
    if v in ("inf", "-inf", "nan"):
        return float(v)
    return v


def _check_J(J: int) -> None:
    if J < 4:
        raise ValueError(f"J must be >= 4, got {J}")


# ---------------------------------------------------------------- cusps

def cusp_signal(alpha: float, J: int) -> np.ndarray:
    """Samples of |x - 1/2|^alpha on a grid offset by half a cell."""
    if alpha <= -1:
        raise ValueError("time-domain cusps need alpha > -1")
    n = 2 ** J
    x = (np.arange(n) + 0.5) / n - 0.5
    if alpha >= 0 and float(alpha).is_integer() and int(alpha) % 2 == 0:
        # |x|^{2m} is smooth; use the odd-signed variant x|x|^{2m-1}
        return x * np.abs(x) ** (alpha - 1)
    return np.abs(x) ** alpha


def cusp(alpha: float, J: int, mode: str = "coefficient",
         bank: FilterBank | None = None) -> tuple[CoefficientField, GroundTruth]:
    """Cusp of order alpha at x0 = 1/2, synthesized in the time or coefficient domain.

    In the coefficient domain c_{j,k} = 2^{-alpha j} (1 + |k - 2^{j-1}|)^{-6}
    (periodic distance), which has the self-similar form c_{j,k} = 2^{-alpha j} c_{0,k'}
    with rapidly decaying c_{0,.} and works for any real alpha.
    """
    _check_J(J)
    if mode in ("time", "time-domain"):
        field_ = analyze(cusp_signal(alpha, J), bank)
    elif mode in ("coefficient", "coefficient-domain"):
        detail = []
        for j in range(J):
            n = 2 ** j
            k = np.arange(n)
            dist = np.abs(k - (n // 2))
            dist = np.minimum(dist, n - dist)
            detail.append(2.0 ** (-alpha * j) * (1.0 + dist) ** (-CUSP_DECAY))
        field_ = CoefficientField(J - 1, tuple(detail), filter=None)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    p0 = math.inf if alpha >= 0 else -1.0 / alpha
    truth = GroundTruth("cusp", {"alpha": alpha, "J": J, "mode": mode}, x0=0.5,
                        p_exponent=(alpha, 0.0), lacunarity=0.0, p0=p0,
                        eta=(1.0, alpha), hmin=alpha)
    return field_, truth


# ---------------------------------------------------------------- lacunary combs

_THETA = ((0.0, 0.25, 1.0), (0.25, 0.5, -1.0), (0.5, 0.75, -1.0), (0.75, 1.0, 1.0))


def _add_box(signal: np.ndarray, u: float, v: float, value: float) -> None:
    """Add the cell averages of value * 1_[u, v) (periodic, u < v) to ``signal``."""
    n = signal.size
    a, b = u * n, v * n
    shift = math.floor(a)
    a, b = a - shift, b - shift
    first, last = 0, math.ceil(b) - 1
    cells = np.arange(first, last + 1)
    overlap = np.minimum(cells + 1, b) - np.maximum(cells, a)
    np.add.at(signal, (cells + shift) % n, value * overlap)


def lacunary_comb_signal(alpha: float, omega: float, gamma: float, J: int) -> np.ndarray:
    """Cell averages of sum_j 2^{-alpha j} theta(2^{gamma j}(x - 2^{-omega j})).

    theta = psi(2x) - psi(2x - 1) for the Haar psi. Teeth are kept while their
    left end 2^{-omega j} is at least one cell away from the origin.
    """
    _check_J(J)
    if not gamma > 1:
        raise ValueError("lacunary combs need gamma > 1")
    if not omega > 0:
        raise ValueError("omega must be > 0")
    if gamma < omega:
        # teeth wider than their distance to 0: h^{1/q} can no longer be affine with this slope
        warnings.warn(f"gamma = {gamma} < omega = {omega}: the comb is not lacunary at 0",
                      RuntimeWarning, stacklevel=2)
    n_teeth = math.floor(J / omega)
    if n_teeth < 4:
        raise ValueError(f"only {n_teeth} teeth resolvable at J={J}; need 4")
    signal = np.zeros(2 ** J)
    for j in range(1, n_teeth + 1):
        start, width = 2.0 ** (-omega * j), 2.0 ** (-gamma * j)
        amp = 2.0 ** (-alpha * j)
        for lo, hi, sign in _THETA:
            _add_box(signal, start + lo * width, start + hi * width, sign * amp)
    return signal


def comb_scale_range(omega: float, gamma: float, J: int) -> tuple[int, int]:
    """Scales at which the leaders at 0 see resolved teeth.

    The tooth j = j'/omega sits under λ_{j'}(0) and has width 2^{-gamma j}, so
    it is resolved only when gamma * j <= J.
    """
    j2 = math.floor(min(J, omega * math.floor(J / gamma))) - 1
    return 1, j2


def chirp_scale_range(a: float, J: int) -> tuple[int, int]:
    """Scales at which the leaders at 0 still see the chirp blocks.

    Blocks at scale j start at 2^{-aj}, i.e. under λ_{aj}(0); leaders at
    scale j therefore need scales up to j/a.
    """
    return 1, math.floor(a * (J - 1)) - 1


def lacunary_comb(alpha: float, omega: float, gamma: float, J: int,
                  bank: FilterBank | None = None) -> tuple[CoefficientField, GroundTruth]:
    """Lacunary comb singular at x0 = 0, analyzed from its cell averages."""
    field_ = analyze(lacunary_comb_signal(alpha, omega, gamma, J), bank)
    lac = gamma / omega - 1.0
    p0 = math.inf if alpha >= 0 else -gamma / alpha
    truth = GroundTruth("lacunary_comb", {"alpha": alpha, "omega": omega, "gamma": gamma, "J": J},
                        x0=0.0, p_exponent=(alpha / omega, lac), lacunarity=lac, p0=p0,
                        extra={"scale_range": list(comb_scale_range(omega, gamma, J))})
    return field_, truth


# ---------------------------------------------------------------- thin chirps

def thin_chirp(a: float, b: float, alpha: float, J: int) -> tuple[CoefficientField, GroundTruth]:
    """c_{j,k} = 2^{-alpha j} for k in [2^{(1-a)j}, 2^{(1-a)j} + 2^{bj}], else 0."""
    _check_J(J)
    if not (0 < a < 1 and 0 < b < 1 - a):
        raise ValueError("thin chirps need 0 < a < 1 and 0 < b < 1 - a")
    detail = []
    for j in range(J):
        d = np.zeros(2 ** j)
        lo = math.ceil(2.0 ** ((1 - a) * j))
        hi = min(math.floor(2.0 ** ((1 - a) * j) + 2.0 ** (b * j)), 2 ** j - 1)
        if lo <= hi:
            d[lo:hi + 1] = 2.0 ** (-alpha * j)
        detail.append(d)
    field_ = CoefficientField(J - 1, tuple(detail))
    lac = (1 - a - b) / a
    p0 = (1 - b) / -alpha if alpha < 0 else math.inf
    truth = GroundTruth("thin_chirp", {"a": a, "b": b, "alpha": alpha, "J": J}, x0=0.0,
                        p_exponent=(alpha / a, lac), lacunarity=lac, p0=p0,
                        eta=(1 - b, alpha), hmin=alpha,
                        extra={"scale_range": list(chirp_scale_range(a, J))})
    return field_, truth


# ---------------------------------------------------------------- lacunary wavelet series

def lacunary_wavelet_series(alpha: float, eta: float, J: int,
                            seed: int | None = None) -> tuple[CoefficientField, GroundTruth]:
    """floor(2^{eta j}) coefficients of size 2^{-alpha j} per scale, at random positions."""
    _check_J(J)
    if not 0 < eta < 1:
        raise ValueError(f"eta must lie in (0, 1), got {eta}")
    rng = np.random.default_rng(seed)
    detail, locations = [], []
    for j in range(J):
        d = np.zeros(2 ** j)
        count = math.floor(2.0 ** (eta * j))
        ks = np.sort(rng.choice(2 ** j, size=count, replace=False))
        d[ks] = 2.0 ** (-alpha * j)
        detail.append(d)
        locations.append(ks)
    field_ = CoefficientField(J - 1, tuple(detail))
    p0 = (eta - 1) / alpha if alpha < 0 else math.inf
    spectra = {
        "p": {"formula": "eta*(H + 1/p)/(alpha + 1/p)", "support": ["alpha", "alpha/eta + (1/eta - 1)/p"]},
        "lacunarity": {"formula": "eta*(L + 1)", "support": [0.0, 1.0 / eta - 1.0]},
    }
    truth = GroundTruth("lacunary_wavelet_series",
                        {"alpha": alpha, "eta": eta, "J": J, "seed": seed},
                        p0=p0, eta=(1.0 - eta, alpha), hmin=alpha, spectra=spectra,
                        diagnostics={"locations": locations})
    return field_, truth


def lws_h_max(alpha: float, eta: float, p: float) -> float:
    """Right end of the p-spectrum support; p = inf gives alpha/eta."""
    return alpha / eta + (1.0 / eta - 1.0) / p


def lws_p_spectrum(alpha: float, eta: float, p: float, H) -> np.ndarray:
    """Theoretical d^p(H), -inf off the support [alpha, H_max]."""
    H = np.asarray(H, dtype=float)
    inv_p = 0.0 if math.isinf(p) else 1.0 / p
    d = eta * (H + inv_p) / (alpha + inv_p)
    inside = (H >= alpha - 1e-12) & (H <= lws_h_max(alpha, eta, p) + 1e-12)
    return np.where(inside, d, -np.inf)


def lws_lacunarity_spectrum(eta: float, L) -> np.ndarray:
    L = np.asarray(L, dtype=float)
    inside = (L >= -1e-12) & (L <= 1.0 / eta - 1.0 + 1e-12)
    return np.where(inside, eta * (L + 1.0), -np.inf)


# ---------------------------------------------------------------- Weierstrass, noise

def weierstrass(a: float, b: float, n_terms: int | None = None,
                N: int = 2 ** 14) -> tuple[np.ndarray, GroundTruth]:
    """Samples of sum_n a^n cos(b^n pi x) for x in [0, 2).

    Sampling over a full period (integer b) keeps the periodic extension
    continuous. Terms stop once a^n < 2^-52 unless ``n_terms`` is given.
    """
    if not 0 < a < 1:
        raise ValueError("need 0 < a < 1")
    if not a * b >= 1:
        # a*b = 1 is the Lipschitz boundary case H = 1
        raise ValueError("need a*b >= 1")
    if n_terms is None:
        n_terms = math.ceil(52 / -math.log2(a))
    m = np.arange(N)
    out = np.zeros(N)
    integral_b = float(b).is_integer()
    for n in range(n_terms):
        if integral_b:
            # cos(b^n pi 2m/N) = cos(2 pi (b^n m mod N) / N), exact in integers
            phase = (pow(int(b), n, N) * m) % N
            out += a ** n * np.cos(2 * np.pi * phase / N)
        else:
            out += a ** n * np.cos(np.pi * b ** n * 2.0 * m / N)
    H = -math.log(a) / math.log(b)
    truth = GroundTruth("weierstrass", {"a": a, "b": b, "n_terms": n_terms, "N": N},
                        x0=0.5, p_exponent=(H, 0.0), lacunarity=0.0, p0=math.inf,
                        eta=(0.0, H), hmin=H)
    return out, truth


def white_noise(N: int, seed: int | None = None) -> tuple[np.ndarray, GroundTruth]:
    """I.i.d. standard normal samples; eta(p) = -p/2 so p0 = 0."""
    x = np.random.default_rng(seed).standard_normal(N)
    truth = GroundTruth("white_noise", {"N": N, "seed": seed}, p0=0.0,
                        eta=(0.0, -0.5), hmin=-0.5)
    return x, truth


# ---------------------------------------------------------------- measures

CANTOR_DIM = math.log(2) / math.log(3)


def cantor_masses(J: int, depth: int | None = None) -> np.ndarray:
    """Mass of the middle-third Cantor measure in each of the 2^J cells of [0, 1)."""
    depth = min(J, 20) if depth is None else depth
    lefts = np.zeros(1)
    for _ in range(depth):
        lefts = np.concatenate([lefts / 3.0, lefts / 3.0 + 2.0 / 3.0])
    width = 3.0 ** -depth
    n = 2 ** J
    mass = 2.0 ** -depth
    a, b = lefts * n, (lefts + width) * n
    masses = np.zeros(n)
    first = np.floor(a).astype(np.int64)
    # a ternary piece of width 3^-depth may straddle a cell boundary
    span = math.ceil(width * n) + 1
    for s in range(span):
        cell = first + s
        overlap = np.clip(np.minimum(cell + 1, b) - np.maximum(cell, a), 0.0, None)
        np.add.at(masses, cell % n, mass * overlap / (b - a))
    return masses


def cantor_measure(J: int, bank: FilterBank | None = None) -> tuple[CoefficientField, GroundTruth]:
    """Middle-third Cantor measure, analyzed from its cell densities."""
    _check_J(J)
    density = cantor_masses(J) * 2 ** J
    field_ = analyze(density, bank)
    delta = CANTOR_DIM
    truth = GroundTruth("cantor_measure", {"J": J}, p0=1.0, hmin=delta - 1.0,
                        extra={"delta": delta,
                               "eta_bound": "(1 - delta)(1 - p): lower for p < 1, upper for p > 1",
                               "eta_at_1": 0.0})
    return field_, truth


def cantor_eta_bound(p: float) -> float:
    return (1.0 - CANTOR_DIM) * (1.0 - p)


def eta_zero_counterexample(J: int) -> tuple[CoefficientField, GroundTruth]:
    """Every coefficient at scale j >= 1 equals 1/j^2; eta(p) = 0 for all p > 0."""
    _check_J(J)
    detail = [np.zeros(1)] + [np.full(2 ** j, 1.0 / j ** 2) for j in range(1, J)]
    field_ = CoefficientField(J - 1, tuple(detail))
    truth = GroundTruth("eta_zero_counterexample", {"J": J}, eta=(0.0, 0.0), hmin=0.0)
    return field_, truth


def sparsity_counts(field_: CoefficientField) -> np.ndarray:
    return field_.nonzero_counts()


GENERATORS = {
    "cusp": cusp,
    "comb": lacunary_comb,
    "chirp": thin_chirp,
    "lws": lacunary_wavelet_series,
    "weierstrass": weierstrass,
    "noise": white_noise,
    "cantor": cantor_measure,
    "eta0": eta_zero_counterexample,
}
