"""Closed-form lemma evaluators and the canonical table of sharp bounds.

Inputs given as ``int``/``Fraction`` are evaluated in exact arithmetic
wherever the formula is rational; a branch that needs a square root returns
a ``float``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np


class LemmaDomainError(ValueError):
    pass


class InternalConsistencyError(ArithmeticError):
    pass


def _exact(*xs) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in xs)


def _sqrt(x):
    return math.sqrt(x)


# --- Y(A, B, C) = max_{|z| <= 1} |A + B z + C z^2| + 1 - |z|^2 ---------------

# Tie policy for comparisons that the piecewise definition leaves on a
# boundary: "literal" follows the stated strict/non-strict signs, "closed"
# counts every equality as satisfied, "open" as not satisfied.
_MODES = ("literal", "closed", "open")


def _le(x, y, mode):
    return x <= y if mode != "open" else x < y


def _lt(x, y, mode):
    return x < y if mode != "closed" else x <= y


def _ge(x, y, mode):
    return _le(y, x, mode)


def _y_branch(A, B, C, mode):
    aA, aB, aC = abs(A), abs(B), abs(C)
    if A * C >= 0:
        if _ge(aB, 2 * (1 - aC), mode):
            return aA + aB + aC, "i-first"
        return 1 + aA + B * B / (4 * (1 - aC)), "i-second"
    # A*C < 0, so C != 0
    one = Fraction(1) if _exact(A, B, C) else 1.0
    crit = -4 * A * C * (one / (C * C) - 1)
    if _le(crit, B * B, mode) and _lt(aB, 2 * (1 - aC), mode):
        return 1 - aA + B * B / (4 * (1 - aC)), "ii-first"
    if _lt(B * B, min(4 * (1 + aC) ** 2, crit), mode):
        return 1 + aA + B * B / (4 * (1 + aC)), "ii-second"
    if _le(aC * (aB + 4 * aA), abs(A * B), mode):
        return aA + aB - aC, "ii-R-first"
    if _le(abs(A * B), aC * (aB - 4 * aA), mode):
        return -aA + aB + aC, "ii-R-second"
    radicand = 1 - B * B / (4 * A * C)
    if radicand < 0:
        raise InternalConsistencyError(f"negative radicand at {(A, B, C)}")
    return (aC + aA) * _sqrt(radicand), "ii-R-third"


def y_eval(A, B, C) -> tuple:
    """``(Y(A, B, C), branch_id)`` for real ``A, B, C``.

    On a branch boundary the coinciding formulas are all evaluated and the
    largest is returned.
    """
    for v in (A, B, C):
        if not math.isfinite(v):
            raise LemmaDomainError("Y needs finite inputs")
    results = {}
    for mode in _MODES:
        try:
            value, branch = _y_branch(A, B, C, mode)
        except ZeroDivisionError:
            # at |C| = 1 a strict/closed reading can select a formula that is
            # undefined there; the literal reading never does
            continue
        results.setdefault(branch, value)
    branch = max(results, key=lambda b: results[b])
    return results[branch], branch


def y_objective(A, B, C, z):
    """``|A + B z + C z^2| + 1 - |z|^2`` (vectorized over ``z``)."""
    return np.abs(A + B * z + C * z * z) + 1 - np.abs(z) ** 2


# --- Lemma C ------------------------------------------------------------------

def lemma_c_bound(v):
    """Sharp bound of ``|c2 - v c1^2|`` over the Carathéodory class."""
    if v < 0:
        return -4 * v + 2
    if v <= 1:
        return 2 if _exact(v) else 2.0
    return 4 * v - 2


# --- Lemma D ------------------------------------------------------------------

def lemma_d_check(B, D) -> bool:
    """True when ``|c3 - 2B c1 c2 + D c1^3| <= 2`` is guaranteed."""
    return 0 <= B <= 1 and B * (2 * B - 1) <= D <= B


# --- Lemma E ------------------------------------------------------------------

def lemma_e_slack(gamma, lam, alpha, beta):
    """Left side minus right side of the Lemma E hypothesis."""
    return (
        8 * lam * (1 - lam) * ((alpha * beta - 2 * gamma) ** 2
                               + (alpha * (lam + alpha) - beta) ** 2)
        + alpha * (1 - alpha) * (beta - 2 * lam * alpha) ** 2
        - 4 * alpha ** 2 * (1 - alpha) ** 2 * lam * (1 - lam)
    )


def lemma_e_check(gamma, lam, alpha, beta) -> tuple:
    """``(holds, slack)``; when it holds,
    ``|gamma c1^4 + lam c2^2 + 2 alpha c1 c3 - 1.5 beta c1^2 c2 - c4| <= 2``."""
    if not 0 < alpha < 1:
        raise LemmaDomainError(f"alpha must lie in (0, 1), got {alpha}")
    if not 0 < lam < 1:
        raise LemmaDomainError(f"lambda must lie in (0, 1), got {lam}")
    slack = lemma_e_slack(gamma, lam, alpha, beta)
    return slack <= 0, slack


# (gamma, lambda, alpha, beta) writing 40 gamma4 in the Lemma E shape.  The
# first set follows from the series coefficients of the class; the second
# comes from the variant expansion of a5 with -c1 c3/20 + 7 c1^2 c2/160
# - 223 c1^4/30720, which the series does not reproduce.
GAMMA4_E_PARAMS = (Fraction(8281, 36864), Fraction(25, 36), Fraction(45, 64),
                   Fraction(1471, 1728))
GAMMA4_E_PARAMS_VARIANT = (Fraction(8857, 36864), Fraction(25, 36), Fraction(37, 64),
                           Fraction(1363, 1728))


def lemma_e_functional(gamma, lam, alpha, beta, c1, c2, c3, c4):
    return (gamma * c1 ** 4 + lam * c2 ** 2 + 2 * alpha * c1 * c3
            - Fraction(3, 2) * beta * c1 ** 2 * c2 - c4)


# --- Lemma F ------------------------------------------------------------------

def lemma_f_bounds(B1, B2, B3) -> tuple:
    """Sharp upper bounds of ``Psi_+ = |B2 c1^2 + B3 c2| - |B1 c1|`` and of
    ``Psi_- = -Psi_+``.  Returns ``(plus, minus, (plus_branch, minus_branch))``.
    """
    if not B1 > 0:
        raise LemmaDomainError(f"B1 must be positive, got {B1}")
    aB3 = abs(B3)
    if abs(2 * B2 + B3) >= aB3 + B1:
        plus, pb = abs(4 * B2 + 2 * B3) - 2 * B1, "plus-first"
    else:
        plus, pb = 2 * aB3, "plus-second"
    B4 = abs(4 * B2 + 2 * B3)
    if B1 >= B4 + 2 * aB3:
        minus, mb = 2 * B1 - B4, "minus-first"
    elif B1 ** 2 <= 2 * aB3 * (B4 + 2 * aB3):
        minus, mb = 2 * B1 * _sqrt(2 * aB3 / (B4 + 2 * aB3)), "minus-second"
    else:
        minus, mb = 2 * aB3 + B1 ** 2 / (B4 + 2 * aB3), "minus-third"
    return plus, minus, (pb, mb)


def psi_plus(B1, B2, B3, c1, c2):
    return np.abs(B2 * c1 ** 2 + B3 * c2) - np.abs(B1 * c1)


# --- Hankel case analysis ----------------------------------------------------

# (coefficient of tau1^3 in A, coefficient of tau1 in B)
_HANKEL_ABC = {"direct": (73, 1), "inverse": (13, 7)}


def psi(t):
    """Numerator polynomial of the direct-variant bound."""
    return 256 - 208 * t ** 2 + 25 * t ** 4


def psi1(t):
    """Numerator polynomial of the inverse-variant bound."""
    return 256 - 112 * t ** 2 - 131 * t ** 4


def dpsi(t):
    return -416 * t + 100 * t ** 3


def dpsi1(t):
    return -224 * t - 524 * t ** 3


PSI_POLY = {"direct": psi, "inverse": psi1}
DPSI_COEFFS = {"direct": [100, 0, -416, 0], "inverse": [-524, 0, -224, 0]}


def hankel_abc(variant: str, tau1):
    if variant not in _HANKEL_ABC:
        raise LemmaDomainError(f"variant must be 'direct' or 'inverse', got {variant!r}")
    if not 0 < tau1 < 1:
        raise LemmaDomainError(f"tau1 must lie in (0, 1), got {tau1}")
    ka, kb = _HANKEL_ABC[variant]
    A = ka * tau1 ** 3 / (288 * (1 - tau1 ** 2))
    B = kb * tau1 / Fraction(18) if _exact(tau1) else kb * tau1 / 18
    C = (8 + tau1 ** 2) / (9 * tau1)
    return A, B, C


def hankel_case_analysis(variant: str, tau1) -> tuple:
    """``(A, B, C, bound)`` for the interior case ``0 < tau1 < 1``.

    ``bound = tau1 (1 - tau1^2) Y(A, B, C) / 128``, which equals
    ``psi(tau1) / 36864`` (direct) or ``psi1(tau1) / 36864`` (inverse).
    """
    A, B, C = hankel_abc(variant, tau1)
    if not A * C > 0:
        raise InternalConsistencyError("expected A*C > 0")
    if not abs(B) > 2 * (1 - abs(C)):
        raise InternalConsistencyError("expected |B| > 2(1 - |C|)")
    y, branch = y_eval(A, B, C)
    if branch != "i-first":
        raise InternalConsistencyError(f"unexpected branch {branch}")
    bound = tau1 * (1 - tau1 ** 2) * y / 128
    return A, B, C, bound


def case_values(variant: str) -> dict:
    """Exact values of the three cases of the ``tau1`` split.

    Case I is ``tau1 = 1``; case II is ``tau1 = 0`` maximized over ``|tau2| <= 1``;
    case III is the supremum over ``0 < tau1 < 1``, which by monotonicity of
    the numerator polynomial is its value at 0.
    """
    # at tau1 = 1 the c-form collapses to c = (2, 2, 2)
    from .functionals import hankel_inv_log_from_c, hankel_log_from_c

    form = hankel_log_from_c if variant == "direct" else hankel_inv_log_from_c
    two = Fraction(2)
    case1 = abs(form(two, two, two))
    case2 = Fraction(256, 36864)
    if not psi_decreasing(variant):
        raise InternalConsistencyError("numerator polynomial is not decreasing")
    case3 = Fraction(PSI_POLY[variant](0), 36864)
    return {"I": case1, "II": case2, "III": case3}


def psi_decreasing(variant: str) -> bool:
    """No root of the derivative in (0, 1] and negative derivative there."""
    roots = np.roots(DPSI_COEFFS[variant])
    for r in roots:
        if abs(r.imag) < 1e-12 and 0 < r.real <= 1:
            return False
    d = dpsi if variant == "direct" else dpsi1
    return d(Fraction(1, 2)) < 0


def stitched_bound(variant: str) -> Fraction:
    return max(case_values(variant).values())


# --- the theorem table -------------------------------------------------------

@dataclass(frozen=True)
class TheoremBound:
    """``sense='max'``: ``functional <= value``; ``'min'``: ``functional >= value``."""

    theorem_id: str
    description: str
    sense: str
    exact: str
    value: float
    witness: str

    @property
    def sharp_bound(self) -> float:
        return self.value


def _tb(tid, desc, sense, exact, value, witness):
    return TheoremBound(tid, desc, sense, exact, float(value), witness)


def theorem_bounds() -> list[TheoremBound]:
    rows = [
        _tb(f"gamma{n}", f"|gamma{n}|", "max", f"1/{4 * (n + 1)}",
            Fraction(1, 4 * (n + 1)), f"extremal-{n}")
        for n in range(1, 5)
    ]
    rows += [
        _tb("hankel_log", "|gamma1 gamma3 - gamma2^2|", "max", "1/144",
            Fraction(1, 144), "extremal-2"),
        _tb("Gamma1", "|Gamma1|", "max", "1/8", Fraction(1, 8), "extremal-1"),
        _tb("Gamma2", "|Gamma2|", "max", "1/12", Fraction(1, 12), "extremal-2"),
        _tb("hankel_inv_log", "|Gamma1 Gamma3 - Gamma2^2|", "max", "1/144",
            Fraction(1, 144), "extremal-2"),
        _tb("zalcman_23", "|a2 a3 - a4|", "max", "1/8", Fraction(1, 8), "extremal-3"),
        _tb("moduli_gamma_upper", "|gamma2| - |gamma1|", "max", "1/12",
            Fraction(1, 12), "extremal-2"),
        _tb("moduli_gamma_lower", "|gamma2| - |gamma1|", "min", "-1/(2*sqrt(23))",
            -1 / (2 * math.sqrt(23)), "lower-gamma"),
        _tb("moduli_Gamma_upper", "|Gamma2| - |Gamma1|", "max", "1/12",
            Fraction(1, 12), "extremal-2"),
        _tb("moduli_Gamma_lower", "|Gamma2| - |Gamma1|", "min", "-1/(2*sqrt(29))",
            -1 / (2 * math.sqrt(29)), "lower-Gamma"),
    ]
    return rows


def theorem_bound(theorem_id: str) -> TheoremBound:
    for row in theorem_bounds():
        if row.theorem_id == theorem_id:
            return row
    raise KeyError(theorem_id)
