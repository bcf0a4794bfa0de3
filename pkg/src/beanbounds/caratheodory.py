"""Parametrization of the Carathéodory class.

The first three coefficients of ``p = 1 + c1 z + c2 z**2 + ...`` with
``Re p > 0`` and ``c1 >= 0`` are written through three parameters
``tau1 in [0, 1]`` and ``tau2, tau3`` in the closed unit disk.  These are the
leading Schur parameters of the Schwarz function ``w = (p - 1)/(p + 1)``, so a
fourth parameter ``tau4`` (again in the closed disk) extends the
parametrization to ``c4`` without leaving the class.

Everything here is written so the same formulas accept Python scalars
(``Fraction``, ``float``, ``complex``) or NumPy arrays.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .series_core import (
    DEFAULT_ORDER,
    FLOAT,
    RATIONAL,
    TruncatedSeries,
    div,
)

PARAM_TOL = 1e-12


class ParameterError(ValueError):
    pass


def conj(x):
    if isinstance(x, np.ndarray):
        return np.conj(x)
    return x.conjugate()


def abs2(x):
    """``|x|**2`` that stays exact for rationals."""
    if isinstance(x, np.ndarray):
        return x.real * x.real + x.imag * x.imag
    if isinstance(x, numbers.Real):
        return x * x
    return x.real * x.real + x.imag * x.imag


@dataclass(frozen=True)
class SchwarzParams:
    tau1: object
    tau2: object
    tau3: object
    tau4: object = None

    def __post_init__(self):
        t1 = self.tau1
        if isinstance(t1, numbers.Complex) and not isinstance(t1, numbers.Real):
            if abs(t1.imag) > PARAM_TOL:
                raise ParameterError(f"tau1 must be real, got {t1!r}")
            object.__setattr__(self, "tau1", t1.real)
        if not (-PARAM_TOL <= self.tau1 <= 1 + PARAM_TOL):
            raise ParameterError(f"tau1 = {self.tau1!r} is outside [0, 1]")
        for name in ("tau2", "tau3", "tau4"):
            value = getattr(self, name)
            if value is not None and abs2(value) > (1 + PARAM_TOL) ** 2:
                raise ParameterError(f"|{name}| = {abs(value)!r} exceeds 1")

    @property
    def is_exact(self) -> bool:
        values = [self.tau1, self.tau2, self.tau3, self.tau4]
        return all(
            isinstance(v, (int, Fraction)) for v in values if v is not None
        )

    def to_json(self) -> dict:
        out = {"tau1": float(self.tau1)}
        for name in ("tau2", "tau3", "tau4"):
            value = getattr(self, name)
            if value is None:
                continue
            value = complex(value)
            out[name] = [value.real, value.imag]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SchwarzParams":
        def pt(v):
            return None if v is None else complex(v[0], v[1])

        return cls(
            float(data["tau1"]),
            pt(data["tau2"]),
            pt(data["tau3"]),
            pt(data.get("tau4")),
        )


@dataclass(frozen=True)
class CaratheodoryCoeffs:
    c1: object
    c2: object
    c3: object
    c4: object = None

    def as_tuple(self) -> tuple:
        return (self.c1, self.c2, self.c3, self.c4)


def schwarz_coeffs(tau1, tau2, tau3, tau4=None):
    """Taylor coefficients ``w1..w4`` of the Schwarz function with the given
    leading Schur parameters (``w4`` is ``None`` without ``tau4``)."""
    s1 = 1 - tau1 * tau1
    s2 = 1 - abs2(tau2)
    w1 = tau1
    w2 = s1 * tau2
    w3 = s1 * (s2 * tau3 - tau1 * tau2 * tau2)
    w4 = None
    if tau4 is not None:
        s3 = 1 - abs2(tau3)
        w4 = s1 * (
            s2 * (s3 * tau4 - conj(tau2) * tau3 * tau3 - 2 * tau1 * tau2 * tau3)
            + tau1 * tau1 * tau2 ** 3
        )
    return w1, w2, w3, w4


def lemma_a_coeffs(tau1, tau2, tau3):
    """``c1, c2, c3`` exactly as the classical parametrization writes them."""
    s1 = 1 - tau1 * tau1
    c1 = 2 * tau1
    c2 = 2 * tau1 ** 2 + 2 * s1 * tau2
    c3 = (
        2 * tau1 ** 3
        + 4 * s1 * tau1 * tau2
        - 2 * s1 * tau1 * tau2 ** 2
        + 2 * s1 * (1 - abs2(tau2)) * tau3
    )
    return c1, c2, c3


def c4_from_params(tau1, tau2, tau3, tau4):
    """``c4`` of ``p = (1 + w)/(1 - w)`` where ``w`` has Schur data tau1..tau4."""
    w1, w2, w3, w4 = schwarz_coeffs(tau1, tau2, tau3, tau4)
    # p = 1 + 2w + 2w^2 + 2w^3 + 2w^4 + ...
    return 2 * (w4 + 2 * w1 * w3 + w2 * w2 + 3 * w1 * w1 * w2 + w1 ** 4)


def params_to_coeffs(p: SchwarzParams) -> CaratheodoryCoeffs:
    c1, c2, c3 = lemma_a_coeffs(p.tau1, p.tau2, p.tau3)
    c4 = None
    if p.tau4 is not None:
        c4 = c4_from_params(p.tau1, p.tau2, p.tau3, p.tau4)
    return CaratheodoryCoeffs(c1, c2, c3, c4)


def p_series(c: CaratheodoryCoeffs, order: int | None = None,
             field: str | None = None) -> TruncatedSeries:
    """``1 + c1 z + ... + c4 z**4`` (stopping at the last populated coefficient)."""
    coeffs = [1] + [x for x in c.as_tuple() if x is not None]
    if field is None:
        field = RATIONAL if all(isinstance(x, (int, Fraction)) for x in coeffs) else FLOAT
    if order is None:
        order = len(coeffs) - 1
    return TruncatedSeries.from_coeffs(coeffs, order, field)


def omega_from_p(p: TruncatedSeries) -> TruncatedSeries:
    """Schwarz series ``(p - 1)/(p + 1)``."""
    if p[0] != 1:
        raise ParameterError("p must satisfy p(0) = 1")
    return div(p - 1, p + 1)


def p_from_omega(omega: TruncatedSeries) -> TruncatedSeries:
    if omega[0] != 0:
        raise ParameterError("a Schwarz function vanishes at 0")
    return div(1 + omega, 1 - omega)


def lemma_a_unique_p(tau1, tau2, order: int = DEFAULT_ORDER,
                     field: str = FLOAT) -> TruncatedSeries:
    """The unique ``p`` attached to ``tau1`` inside the disk and ``|tau2| = 1``."""
    t1b = conj(tau1) if not isinstance(tau1, numbers.Real) else tau1
    num = TruncatedSeries.from_coeffs([1, t1b * tau2 + tau1, tau2], order, field)
    den = TruncatedSeries.from_coeffs([1, t1b * tau2 - tau1, -tau2], order, field)
    return div(num, den)


LOWER_WITNESS_DISCRIMINANT = {"gamma": 23, "Gamma": 29}


def extremal_p_lower(kind: str, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``(1 + a z + z**2)/(1 - z**2)`` with ``a = 8/sqrt(23)`` (``gamma``) or
    ``8/sqrt(29)`` (``Gamma``)."""
    try:
        d = LOWER_WITNESS_DISCRIMINANT[kind]
    except KeyError:
        raise ParameterError(f"kind must be 'gamma' or 'Gamma', got {kind!r}") from None
    a = 8 / math.sqrt(d)
    num = TruncatedSeries.from_coeffs([1, a, 1], order, FLOAT)
    den = TruncatedSeries.from_coeffs([1, 0, -1], order, FLOAT)
    return div(num, den)


def extremal_p_lower_params(kind: str) -> SchwarzParams:
    """Schur data of :func:`extremal_p_lower`: ``tau1 = 4/sqrt(d)``, ``tau2 = 1``."""
    d = LOWER_WITNESS_DISCRIMINANT[kind]
    return SchwarzParams(4 / math.sqrt(d), 1.0 + 0j, 0j, 0j)


# fixed share of every batch drawn on the boundary strata
STRATA_FRACTION = 0.1
STRATA = ("tau1=0", "tau1=1", "|tau2|=1", "|tau3|=1", "|tau4|=1", "(0,1,tau3)")


def _disk(rng, n):
    r = np.sqrt(rng.random(n))
    theta = rng.uniform(-np.pi, np.pi, n)
    return r * np.exp(1j * theta)


def _circle(rng, n):
    return np.exp(1j * rng.uniform(-np.pi, np.pi, n))


def sample_param_arrays(seed: int, count: int) -> dict:
    """Draw ``count`` parameter tuples as arrays ``tau1..tau4``.

    Every tenth index (starting at 0) is a boundary point; the strata in
    :data:`STRATA` are visited in turn.  The result also carries the
    ``stratum`` index per sample (``-1`` for interior draws).
    """
    if count < 1:
        raise ParameterError("count must be at least 1")
    rng = np.random.default_rng(seed)
    tau1 = rng.random(count)
    tau2 = _disk(rng, count)
    tau3 = _disk(rng, count)
    tau4 = _disk(rng, count)

    stride = round(1 / STRATA_FRACTION)
    idx = np.arange(0, count, stride)
    kinds = np.arange(idx.size) % len(STRATA)
    stratum = np.full(count, -1)
    stratum[idx] = kinds
    edge = _circle(rng, idx.size)
    for k in range(len(STRATA)):
        sel = idx[kinds == k]
        e = edge[kinds == k]
        if k == 0:
            tau1[sel] = 0.0
        elif k == 1:
            tau1[sel] = 1.0
        elif k == 2:
            tau2[sel] = e
        elif k == 3:
            tau3[sel] = e
        elif k == 4:
            tau4[sel] = e
        else:
            tau1[sel] = 0.0
            tau2[sel] = 1.0
    return {"tau1": tau1, "tau2": tau2, "tau3": tau3, "tau4": tau4,
            "stratum": stratum}


def sample_params(rng_seed: int, count: int) -> list[SchwarzParams]:
    arrays = sample_param_arrays(rng_seed, count)
    return [
        SchwarzParams(
            float(arrays["tau1"][i]),
            complex(arrays["tau2"][i]),
            complex(arrays["tau3"][i]),
            complex(arrays["tau4"][i]),
        )
        for i in range(count)
    ]


def coeff_arrays(tau1, tau2, tau3, tau4=None) -> tuple:
    """Vectorized :func:`params_to_coeffs`."""
    c1, c2, c3 = lemma_a_coeffs(tau1, tau2, tau3)
    c4 = None if tau4 is None else c4_from_params(tau1, tau2, tau3, tau4)
    return c1, c2, c3, c4
