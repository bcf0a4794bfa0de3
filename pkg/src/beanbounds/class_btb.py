"""Members of the bounded-turning class attached to the bean domain.

``f`` belongs to the class when ``f'(z) = sqrt(1 + tanh(w(z)))`` for a
Schwarz function ``w``.  Coefficients can be produced two ways: the closed
polynomial maps in the Carathéodory coefficients (:func:`coeffs_from_c`) and
the full series pipeline (:func:`from_schwarz`).  The two are cross-checked in
the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import series_core as sc
from ._num import ratio_for
from .caratheodory import (
    CaratheodoryCoeffs,
    ParameterError,
    SchwarzParams,
    abs2,
    omega_from_p,
    p_series,
    params_to_coeffs,
)
from .series_core import DEFAULT_ORDER, RATIONAL, TruncatedSeries

CLOSED_FORM = "closed-form-from-c"
SERIES_PIPELINE = "series-pipeline"
UNVERIFIED = "unverified-membership"


def extremal_tag(k: int) -> str:
    return f"extremal-{k}"


@dataclass(frozen=True)
class BTBFunction:
    """Taylor data ``f(z) = z + a2 z**2 + ... + a5 z**5 (+ higher)``.

    ``a5`` is ``None`` when the producing data did not determine it.
    ``higher`` keeps coefficients beyond ``z**5`` (keyed by degree) when the
    series pipeline computed them.
    """

    a2: object
    a3: object
    a4: object
    a5: object = None
    source: str = UNVERIFIED
    higher: dict = dc_field(default_factory=dict, compare=False)
    carath: CaratheodoryCoeffs | None = dc_field(default=None, compare=False)

    @property
    def coeffs(self) -> tuple:
        return (self.a2, self.a3, self.a4, self.a5)

    def coefficient(self, n: int):
        if n == 0:
            return 0
        if n == 1:
            return 1
        if 2 <= n <= 5:
            return self.coeffs[n - 2]
        return self.higher.get(n, 0)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(a, (int, Fraction)) for a in self.coeffs if a is not None)

    def series(self, order: int | None = None) -> TruncatedSeries:
        """``f`` as a truncated series (order 5, or 4 when ``a5`` is unknown)."""
        known = 5 if self.a5 is not None else 4
        if order is None:
            order = known
        if order > known and not self.higher:
            raise ParameterError(f"coefficients beyond z**{known} are unknown")
        coeffs = [self.coefficient(n) for n in range(order + 1)]
        field = RATIONAL if self.is_exact else sc.FLOAT
        return TruncatedSeries.from_coeffs(coeffs, order, field)

    def to_json(self) -> dict:
        def enc(x):
            if x is None:
                return None
            if isinstance(x, (int, Fraction)):
                x = Fraction(x)
                return f"{x.numerator}/{x.denominator}"
            x = complex(x)
            return [x.real, x.imag]

        out = {f"a{n}": enc(self.coeffs[n - 2]) for n in range(2, 6)}
        for n, v in sorted(self.higher.items()):
            out[f"a{n}"] = enc(v)
        out["source"] = self.source
        return out


def coeffs_from_c(c: CaratheodoryCoeffs) -> BTBFunction:
    """Closed-form ``a2..a5`` in terms of ``c1..c4`` (``a5`` needs ``c4``)."""
    c1, c2, c3, c4 = c.as_tuple()
    if c1 is None or c2 is None or c3 is None:
        raise ParameterError("c1, c2 and c3 are required")
    a2, a3, a4, a5 = a_from_c(c1, c2, c3, c4)
    return BTBFunction(a2, a3, a4, a5, CLOSED_FORM, carath=c)


def a_from_c(c1, c2, c3, c4=None):
    """The coefficient maps on scalars or arrays."""
    F = ratio_for(c1)
    a2 = c1 * F(1, 8)
    a3 = c2 * F(1, 12) - F(5, 96) * c1 ** 2
    a4 = c3 * F(1, 16) - F(5, 64) * c1 * c2 + F(31, 1536) * c1 ** 3
    a5 = None
    if c4 is not None:
        a5 = (
            c4 * F(1, 20)
            - F(1, 16) * c1 * c3
            - F(1, 32) * c2 ** 2
            + F(31, 640) * c1 ** 2 * c2
            - F(199, 30720) * c1 ** 4
        )
    return a2, a3, a4, a5


def bean_series(order: int = DEFAULT_ORDER, field: str = RATIONAL) -> TruncatedSeries:
    """``sqrt(1 + tanh u)`` about ``u = 0``."""
    return sc.sqrt_unit(sc.tanh_series(order, field) + 1)


def derivative_series(omega: TruncatedSeries) -> TruncatedSeries:
    """``f' = sqrt(1 + tanh(omega))`` as a series."""
    return sc.compose(bean_series(omega.order, omega.field), omega)


def from_schwarz(omega: TruncatedSeries) -> BTBFunction:
    """Run ``omega`` through ``f = int_0^z sqrt(1 + tanh(omega(t))) dt``."""
    if omega[0] != 0:
        raise ParameterError("a Schwarz function vanishes at 0")
    if omega.order >= 1 and abs2(omega[1]) > 1 + 1e-12:
        raise ParameterError("|omega'(0)| exceeds 1")
    f = sc.integrate(derivative_series(omega))
    return _from_series(f, SERIES_PIPELINE)


def _from_series(f: TruncatedSeries, source: str, carath=None) -> BTBFunction:
    a = [f[n] if n <= f.order else None for n in range(2, 6)]
    if a[2] is None:
        raise ParameterError("need f to at least order 4")
    higher = {n: f[n] for n in range(6, f.order + 1)}
    return BTBFunction(a[0], a[1], a[2], a[3], source, higher, carath)


def from_params(p: SchwarzParams, pipeline: bool = False) -> BTBFunction:
    """Class member for Schur data ``p``; closed form unless ``pipeline``."""
    c = params_to_coeffs(p)
    if not pipeline:
        return coeffs_from_c(c)
    omega = omega_from_p(p_series(c))
    f = from_schwarz(omega)
    return BTBFunction(f.a2, f.a3, f.a4, f.a5, SERIES_PIPELINE, f.higher, c)


def from_p(p: TruncatedSeries) -> BTBFunction:
    """Class member attached to a Carathéodory series ``p``."""
    f = from_schwarz(omega_from_p(p))
    c = CaratheodoryCoeffs(*[p[n] if n <= p.order else None for n in range(1, 5)])
    return BTBFunction(f.a2, f.a3, f.a4, f.a5, f.source, f.higher, c)


def extremal(k: int, order: int = DEFAULT_ORDER) -> BTBFunction:
    """``f_k = int_0^z sqrt(1 + tanh t**k) dt`` with exact coefficients."""
    if k not in (1, 2, 3, 4):
        raise ParameterError(f"k must be in 1..4, got {k!r}")
    # f_4 needs a9, i.e. omega up to z**8
    order = max(order, 2 * k)
    f = sc.integrate(derivative_series(TruncatedSeries.monomial(k, order)))
    c = CaratheodoryCoeffs(*[2 if n % k == 0 else 0 for n in range(1, 5)])
    return _from_series(f, extremal_tag(k), c)


def extremal_series(k: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    if k not in (1, 2, 3, 4):
        raise ParameterError(f"k must be in 1..4, got {k!r}")
    if order < 1:
        raise ParameterError("order must be at least 1")
    omega = TruncatedSeries.monomial(k, max(order - 1, 0))
    return sc.integrate(derivative_series(omega))


def extremal_params(k: int) -> SchwarzParams:
    """Schur data of ``w = z**k``."""
    if k not in (1, 2, 3, 4):
        raise ParameterError(f"k must be in 1..4, got {k!r}")
    taus = [Fraction(0)] * 4
    taus[k - 1] = Fraction(1)
    return SchwarzParams(*taus)


def inverse_coeffs(f: BTBFunction) -> tuple:
    """``A2..A5`` of ``f^{-1}(w) = w + A2 w**2 + ...`` (``A5`` needs ``a5``)."""
    return inverse_from_a(f.a2, f.a3, f.a4, f.a5)


def inverse_from_a(a2, a3, a4, a5=None):
    A2 = -a2
    A3 = -a3 + 2 * a2 ** 2
    A4 = -a4 + 5 * a2 * a3 - 5 * a2 ** 3
    A5 = None
    if a5 is not None:
        A5 = -a5 + 6 * a4 * a2 - 21 * a3 * a2 ** 2 + 3 * a3 ** 2 + 14 * a2 ** 4
    return A2, A3, A4, A5
