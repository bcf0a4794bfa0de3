"""Coefficient functionals: logarithmic and inverse-logarithmic coefficients,
their second Hankel determinants, the Zalcman functional ``a2 a3 - a4`` and
moduli differences.

Each public functional of a :class:`BTBFunction` is computed by a closed
polynomial in ``a2..a5`` and checked against an independent series route
(``log(f/z)``, or series reversion followed by ``log(F/w)``).  A mismatch
raises :class:`RouteDisagreement`: it can only mean a transcription error in a
formula.  The ``*_from_a`` / ``*_from_c`` helpers are the bare closed forms;
they accept scalars or NumPy arrays and are what the sampler evaluates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import series_core as sc
from ._num import ratio_for
from .class_btb import BTBFunction

FLOAT_ROUTE_TOL = 1e-10


class RouteDisagreement(ArithmeticError):
    pass


@dataclass(frozen=True)
class LogCoeffs:
    gamma1: object
    gamma2: object
    gamma3: object
    gamma4: object = None  # None when a5 (hence c4) is unavailable

    def as_tuple(self):
        return (self.gamma1, self.gamma2, self.gamma3, self.gamma4)


@dataclass(frozen=True)
class InvLogCoeffs:
    Gamma1: object
    Gamma2: object
    Gamma3: object

    def as_tuple(self):
        return (self.Gamma1, self.Gamma2, self.Gamma3)


# closed forms ---------------------------------------------------------------

def gamma_from_a(a2, a3, a4, a5=None):
    F = ratio_for(a2)
    g1 = a2 * F(1, 2)
    g2 = (a3 - a2 ** 2 * F(1, 2)) * F(1, 2)
    g3 = (a4 - a2 * a3 + a2 ** 3 * F(1, 3)) * F(1, 2)
    g4 = None
    if a5 is not None:
        g4 = (a5 - a2 * a4 + a2 ** 2 * a3 - a3 ** 2 * F(1, 2)
              - a2 ** 4 * F(1, 4)) * F(1, 2)
    return g1, g2, g3, g4


def gamma_inv_from_a(a2, a3, a4):
    F = ratio_for(a2)
    G1 = -a2 * F(1, 2)
    G2 = -(a3 - a2 ** 2 * F(3, 2)) * F(1, 2)
    G3 = -(a4 - 4 * a2 * a3 + a2 ** 3 * F(10, 3)) * F(1, 2)
    return G1, G2, G3


def hankel_log_from_a(a2, a3, a4):
    return (a2 ** 4 - 12 * a3 ** 2 + 12 * a2 * a4) * ratio_for(a2)(1, 48)


def hankel_inv_log_from_a(a2, a3, a4):
    return (13 * a2 ** 4 - 12 * a2 ** 2 * a3 - 12 * a3 ** 2
            + 12 * a2 * a4) * ratio_for(a2)(1, 48)


def hankel_log_from_c(c1, c2, c3):
    return (-25 * c1 ** 4 - 160 * c1 ** 2 * c2 - 1024 * c2 ** 2
            + 1152 * c1 * c3) * ratio_for(c1)(1, 589824)


def hankel_inv_log_from_c(c1, c2, c3):
    return (131 * c1 ** 4 - 352 * c1 ** 2 * c2 - 1024 * c2 ** 2
            + 1152 * c1 * c3) * ratio_for(c1)(1, 589824)


def gamma2_from_c(c1, c2):
    """``gamma2 = (c2 - 23 c1**2 / 32) / 24``."""
    F = ratio_for(c1)
    return (c2 - F(23, 32) * c1 ** 2) * F(1, 24)


def Gamma2_from_c(c1, c2):
    """``Gamma2 = -(c2 - 29 c1**2 / 32) / 24``."""
    F = ratio_for(c1)
    return -(c2 - F(29, 32) * c1 ** 2) * F(1, 24)


def gamma4_from_c(c1, c2, c3, c4):
    return (-8281 * c1 ** 4 + 47072 * c1 ** 2 * c2 - 25600 * c2 ** 2
            - 51840 * c1 * c3 + 36864 * c4) * ratio_for(c1)(1, 1474560)


def zalcman_from_a(a2, a3, a4):
    return a2 * a3 - a4


# series routes --------------------------------------------------------------

def gamma_series(f: BTBFunction) -> tuple:
    """Half the coefficients of ``log(f(z)/z)``."""
    L = sc.log_unit(sc.shift_down(f.series()))
    half = L * Fraction(1, 2) if L.field == sc.RATIONAL else L * 0.5
    out = [half[n] for n in range(1, half.order + 1)]
    return tuple(out + [None] * (4 - len(out)))


def gamma_inv_series(f: BTBFunction) -> tuple:
    """Half the coefficients of ``log(F(w)/w)`` for ``F = f^{-1}``."""
    F_ = sc.revert(f.series(4))
    L = sc.log_unit(sc.shift_down(F_))
    half = L * Fraction(1, 2) if L.field == sc.RATIONAL else L * 0.5
    return tuple(half[n] for n in range(1, 4))


def _agree(name: str, x, y, exact: bool):
    if x is None or y is None:
        if x is not y:
            raise RouteDisagreement(f"{name}: one route is unavailable")
        return
    if exact:
        if x != y:
            raise RouteDisagreement(f"{name}: {x} != {y}")
    elif abs(complex(x) - complex(y)) > FLOAT_ROUTE_TOL:
        raise RouteDisagreement(f"{name}: {x} vs {y}")


# public functionals ---------------------------------------------------------

def gamma(f: BTBFunction) -> LogCoeffs:
    closed = gamma_from_a(*f.coeffs)
    series = gamma_series(f)
    for n, (x, y) in enumerate(zip(closed, series), start=1):
        _agree(f"gamma{n}", x, y, f.is_exact)
    c = f.carath
    if closed[3] is not None and c is not None and c.c4 is not None:
        _agree("gamma4 c-form", closed[3], gamma4_from_c(*c.as_tuple()), f.is_exact)
    return LogCoeffs(*closed)


def gamma_inv(f: BTBFunction) -> InvLogCoeffs:
    closed = gamma_inv_from_a(f.a2, f.a3, f.a4)
    series = gamma_inv_series(f)
    for n, (x, y) in enumerate(zip(closed, series), start=1):
        _agree(f"Gamma{n}", x, y, f.is_exact)
    return InvLogCoeffs(*closed)


def hankel_log(f: BTBFunction):
    """``gamma1 gamma3 - gamma2**2`` checked against its ``a``-form (and
    its ``c``-form when ``f`` carries Carathéodory data)."""
    g1, g2, g3, _ = gamma(f).as_tuple()
    det = g1 * g3 - g2 ** 2
    _agree("hankel_log", det, hankel_log_from_a(f.a2, f.a3, f.a4), f.is_exact)
    c = f.carath
    if c is not None and None not in (c.c1, c.c2, c.c3):
        exact = f.is_exact and all(isinstance(x, (int, Fraction)) for x in (c.c1, c.c2, c.c3))
        _agree("hankel_log c-form", det, hankel_log_from_c(c.c1, c.c2, c.c3), exact)
    return det


def hankel_inv_log(f: BTBFunction):
    G1, G2, G3 = gamma_inv(f).as_tuple()
    det = G1 * G3 - G2 ** 2
    _agree("hankel_inv_log", det, hankel_inv_log_from_a(f.a2, f.a3, f.a4), f.is_exact)
    c = f.carath
    if c is not None and None not in (c.c1, c.c2, c.c3):
        exact = f.is_exact and all(isinstance(x, (int, Fraction)) for x in (c.c1, c.c2, c.c3))
        _agree("hankel_inv_log c-form", det,
               hankel_inv_log_from_c(c.c1, c.c2, c.c3), exact)
    return det


def zalcman_23(f: BTBFunction):
    return zalcman_from_a(f.a2, f.a3, f.a4)


def moduli_diff(kind: str, f: BTBFunction):
    """``|gamma2| - |gamma1|`` (``kind='gamma'``) or ``|Gamma2| - |Gamma1|``."""
    if kind == "gamma":
        x1, x2 = gamma(f).as_tuple()[:2]
    elif kind == "Gamma":
        x1, x2 = gamma_inv(f).as_tuple()[:2]
    else:
        raise ValueError(f"kind must be 'gamma' or 'Gamma', got {kind!r}")
    return abs(x2) - abs(x1)


def _encode(x):
    if x is None:
        return None
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"
    x = complex(x)
    return x.real if x.imag == 0 else [x.real, x.imag]


def functional_records(f: BTBFunction) -> list[dict]:
    """All functionals of ``f`` as JSON-ready records."""
    g = gamma(f)
    G = gamma_inv(f)
    rows = []

    def rec(name, value, routes):
        rows.append({"functional": name, "value": _encode(value),
                     "routes": routes, "provenance": f.source})

    both = ["closed-form", "series"]
    for n, v in enumerate(g.as_tuple(), start=1):
        if v is None:
            rows.append({"functional": f"gamma{n}", "value": "unavailable",
                         "routes": both, "provenance": f.source})
        else:
            rec(f"gamma{n}", v, both)
    for n, v in enumerate(G.as_tuple(), start=1):
        rec(f"Gamma{n}", v, both)
    hr = ["determinant", "a-form"] + (["c-form"] if f.carath is not None else [])
    rec("hankel_log", hankel_log(f), hr)
    rec("hankel_inv_log", hankel_inv_log(f), hr)
    rec("zalcman_23", zalcman_23(f), ["closed-form"])
    rec("moduli_gamma", moduli_diff("gamma", f), both)
    rec("moduli_Gamma", moduli_diff("Gamma", f), both)
    return rows
