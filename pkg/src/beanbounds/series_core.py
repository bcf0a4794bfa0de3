"""Truncated formal power series over exact rationals or floats.

A :class:`TruncatedSeries` stores the coefficients ``c[0..order]`` of
``sum c[n] z**n``.  Binary operations truncate both operands to the smaller
order first, so a result never claims more coefficients than its inputs
justify.  :func:`integrate` is the only operation that raises the order.

Two coefficient fields are supported:

``"rational"``
    :class:`fractions.Fraction` coefficients, used for identity checks.
``"float"``
    Python ``float`` or ``complex`` coefficients, used for numerical search.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

RATIONAL = "rational"
FLOAT = "float"
FIELDS = (RATIONAL, FLOAT)

DEFAULT_ORDER = 12


class SeriesError(ValueError):
    """Raised when a series operation's precondition fails."""


class FieldMismatchError(SeriesError):
    pass


def _to_field(value, field: str):
    if field == RATIONAL:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, str)) and not isinstance(value, bool):
            return Fraction(value)
        if isinstance(value, numbers.Rational):
            return Fraction(value.numerator, value.denominator)
        raise SeriesError(f"rational field cannot hold {value!r}")
    if field == FLOAT:
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, numbers.Real):
            return float(value)
        if isinstance(value, numbers.Complex):
            value = complex(value)
            return value.real if value.imag == 0 else value
        raise SeriesError(f"float field cannot hold {value!r}")
    raise SeriesError(f"unknown field {field!r}")


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients of a power series known up to ``z**order`` inclusive."""

    coeffs: tuple
    field: str = RATIONAL

    def __post_init__(self):
        if self.field not in FIELDS:
            raise SeriesError(f"unknown field {self.field!r}")
        if not self.coeffs:
            raise SeriesError("a series needs at least the constant term")
        object.__setattr__(
            self, "coeffs", tuple(_to_field(c, self.field) for c in self.coeffs)
        )

    @classmethod
    def from_coeffs(
        cls, coeffs: Iterable, order: int | None = None, field: str = RATIONAL
    ) -> "TruncatedSeries":
        """Build a series, padding with zeros (or cutting) to ``order``."""
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise SeriesError("order must be non-negative")
        coeffs = coeffs[: order + 1] + [0] * (order + 1 - len(coeffs))
        return cls(tuple(coeffs), field)

    @classmethod
    def constant(cls, value, order: int = DEFAULT_ORDER, field: str = RATIONAL):
        return cls.from_coeffs([value], order, field)

    @classmethod
    def monomial(cls, k: int, order: int = DEFAULT_ORDER, field: str = RATIONAL,
                 coeff=1):
        """``coeff * z**k``; zero if ``k`` exceeds ``order``."""
        coeffs = [0] * (order + 1)
        if k <= order:
            coeffs[k] = coeff
        return cls(tuple(coeffs), field)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise SeriesError(
                f"cannot extend a series known to order {self.order} to {order}"
            )
        return TruncatedSeries(self.coeffs[: order + 1], self.field)

    def to_float(self) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, FLOAT)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return add(self, other)
        return add(self, TruncatedSeries.constant(other, self.order, self.field))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.field)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        k = _to_field(other, self.field)
        return TruncatedSeries(tuple(k * c for c in self.coeffs), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return div(self, other)
        k = _to_field(other, self.field)
        return TruncatedSeries(tuple(c / k for c in self.coeffs), self.field)

    def __call__(self, z):
        """Evaluate the truncated polynomial at a point (Horner)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def to_json(self) -> dict:
        if self.field == RATIONAL:
            coeffs = [_fraction_str(c) for c in self.coeffs]
        else:
            coeffs = [
                [c.real, c.imag] if isinstance(c, complex) else c
                for c in self.coeffs
            ]
        return {"order": self.order, "field": self.field, "coeffs": coeffs}

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedSeries":
        field = data["field"]
        coeffs = data["coeffs"]
        if field == FLOAT:
            coeffs = [complex(*c) if isinstance(c, list) else c for c in coeffs]
        series = cls.from_coeffs(coeffs, field=field)
        if series.order != data["order"]:
            raise SeriesError("order does not match coefficient count")
        return series

    def __str__(self):
        terms = []
        for n, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(f"({c})" + ("" if n == 0 else f"*z**{n}"))
        return (" + ".join(terms) or "0") + f" + O(z**{self.order + 1})"


def _fraction_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _common(a: TruncatedSeries, b: TruncatedSeries) -> int:
    if a.field != b.field:
        raise FieldMismatchError(f"cannot combine {a.field} and {b.field} series")
    return min(a.order, b.order)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = _common(a, b)
    return TruncatedSeries(
        tuple(a.coeffs[k] + b.coeffs[k] for k in range(n + 1)), a.field
    )


def _cauchy(x: Sequence, y: Sequence, n: int) -> list:
    out = []
    for k in range(n + 1):
        s = 0
        for j in range(k + 1):
            if x[j] and y[k - j]:
                s += x[j] * y[k - j]
        out.append(s)
    return out


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = _common(a, b)
    return TruncatedSeries(tuple(_cauchy(a.coeffs, b.coeffs, n)), a.field)


def div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Quotient ``a / b``; ``b`` must have a nonzero constant term."""
    n = _common(a, b)
    if b.coeffs[0] == 0:
        raise SeriesError("divisor has zero constant term")
    q = []
    for k in range(n + 1):
        s = a.coeffs[k]
        for j in range(1, k + 1):
            s -= b.coeffs[j] * q[k - j]
        q.append(s / b.coeffs[0])
    return TruncatedSeries(tuple(q), a.field)


def reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    return div(TruncatedSeries.constant(1, a.order, a.field), a)


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(z))`` by Horner accumulation over powers of ``inner``."""
    n = _common(outer, inner)
    if inner.coeffs[0] != 0:
        raise SeriesError("inner series must have zero constant term")
    inner = inner.truncate(n)
    acc = TruncatedSeries.constant(outer.coeffs[n], n, outer.field)
    for k in range(n - 1, -1, -1):
        acc = mul(acc, inner) + outer.coeffs[k]
    return acc


def derivative(a: TruncatedSeries) -> TruncatedSeries:
    """Termwise derivative; the order drops by one (a constant stays order 0)."""
    if a.order == 0:
        return TruncatedSeries.constant(0, 0, a.field)
    return TruncatedSeries(
        tuple(k * a.coeffs[k] for k in range(1, a.order + 1)), a.field
    )


def integrate(a: TruncatedSeries) -> TruncatedSeries:
    """Antiderivative with zero constant term; order goes up by one."""
    return TruncatedSeries(
        (0,) + tuple(c / (k + 1) for k, c in enumerate(a.coeffs)), a.field
    )


def _require_unit(a: TruncatedSeries, what: str):
    if a.coeffs[0] != 1:
        raise SeriesError(f"{what} needs constant term 1, got {a.coeffs[0]!r}")


def sqrt_unit(a: TruncatedSeries) -> TruncatedSeries:
    """Principal square root of a series with constant term 1."""
    _require_unit(a, "sqrt_unit")
    half = Fraction(1, 2) if a.field == RATIONAL else 0.5
    s = [a.coeffs[0]]
    for n in range(1, a.order + 1):
        acc = a.coeffs[n]
        for k in range(1, n):
            acc -= s[k] * s[n - k]
        s.append(acc * half)
    return TruncatedSeries(tuple(s), a.field)


def tanh_series(order: int = DEFAULT_ORDER, field: str = RATIONAL) -> TruncatedSeries:
    """Maclaurin series of tanh from the ODE ``t' = 1 - t**2``, ``t(0) = 0``."""
    if order < 0:
        raise SeriesError("order must be non-negative")
    t = [_to_field(0, field)]
    for n in range(order):
        # (n+1) t[n+1] = [n == 0] - sum_k t[k] t[n-k]
        rhs = (1 if n == 0 else 0) - sum(t[k] * t[n - k] for k in range(n + 1))
        t.append(_to_field(rhs, field) / (n + 1))
    return TruncatedSeries(tuple(t), field)


def exp_series(a: TruncatedSeries) -> TruncatedSeries:
    """``exp(a)`` for ``a(0) = 0`` via ``E' = a' E``."""
    if a.coeffs[0] != 0:
        raise SeriesError("exp_series needs zero constant term")
    e = [_to_field(1, a.field)]
    for n in range(1, a.order + 1):
        acc = sum(k * a.coeffs[k] * e[n - k] for k in range(1, n + 1))
        e.append(acc / n)
    return TruncatedSeries(tuple(e), a.field)


def log_unit(a: TruncatedSeries) -> TruncatedSeries:
    """Principal logarithm of a series with constant term 1 (``L' = a'/a``)."""
    _require_unit(a, "log_unit")
    if a.order == 0:
        return TruncatedSeries.constant(0, 0, a.field)
    return integrate(div(derivative(a), a.truncate(a.order - 1)))


def shift_down(a: TruncatedSeries) -> TruncatedSeries:
    """``a(z) / z`` for a series with zero constant term."""
    if a.coeffs[0] != 0:
        raise SeriesError("cannot divide by z: constant term is nonzero")
    if a.order == 0:
        raise SeriesError("a(z)/z is undetermined for an order-0 series")
    return TruncatedSeries(a.coeffs[1:], a.field)


def power(a: TruncatedSeries, k: int) -> TruncatedSeries:
    result = TruncatedSeries.constant(1, a.order, a.field)
    base = a
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return result


def revert(f: TruncatedSeries) -> TruncatedSeries:
    """Compositional inverse of ``f = z + a2 z**2 + ...`` by Lagrange inversion.

    ``[w**n] F = (1/n) [z**(n-1)] (z / f(z))**n``.
    """
    if f.order < 1 or f.coeffs[0] != 0 or f.coeffs[1] != 1:
        raise SeriesError("revert needs f(0) = 0 and f'(0) = 1")
    n_max = f.order
    h = reciprocal(shift_down(f))  # z / f(z), known to order n_max - 1
    out = [_to_field(0, f.field), _to_field(1, f.field)]
    hp = h
    for n in range(2, n_max + 1):
        hp = mul(hp, h)
        out.append(hp.coeffs[n - 1] / n)
    return TruncatedSeries(tuple(out), f.field)


def identity(order: int = DEFAULT_ORDER, field: str = RATIONAL) -> TruncatedSeries:
    return TruncatedSeries.monomial(1, order, field)
