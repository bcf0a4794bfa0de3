from fractions import Fraction as Fr

import numpy as np
import pytest

from beanbounds import bounds_engine as be
from beanbounds.caratheodory import coeff_arrays, sample_param_arrays
from oracles import y_grid_max

BRANCH_INPUTS = {
    "i-first": (Fr(-109, 100), Fr(3, 5), Fr(-567, 100)),
    "i-second": (Fr(-6, 25), Fr(-1, 20), Fr(-11, 25)),
    "ii-first": (Fr(7, 1000), Fr(171, 500), Fr(-123, 500)),
    "ii-second": (Fr(-9, 25), Fr(-7, 25), Fr(3, 10)),
    "ii-R-first": (Fr(-51, 10), Fr(111, 20), Fr(12, 25)),
    "ii-R-second": (Fr(7, 50), Fr(27, 5), Fr(-427, 100)),
    "ii-R-third": (Fr(-113, 50), Fr(-23, 25), Fr(393, 100)),
}


@pytest.mark.parametrize("branch", sorted(BRANCH_INPUTS))
def test_y_each_branch_against_grid(branch):
    A, B, C = BRANCH_INPUTS[branch]
    value, got = be.y_eval(A, B, C)
    assert got == branch
    assert abs(float(value) - y_grid_max(float(A), float(B), float(C))) <= 1e-6
    # the float path lands on the same branch and value
    fv, fb = be.y_eval(float(A), float(B), float(C))
    assert fb == branch and abs(fv - float(value)) < 1e-12


def test_y_worked_example():
    assert be.y_eval(1, 2, 1) == (4, "i-first")


@pytest.mark.parametrize("A,B,C", [
    (0, 0, 0), (0, 0, 1), (Fr(1, 2), 1, Fr(1, 2)), (1, 0, -1), (-1, 0, 1),
    (Fr(1, 3), Fr(4, 3), Fr(1, 3)), (2, -2, -1), (0, 1, 0), (Fr(-1, 2), 1, Fr(1, 2)),
])
def test_y_on_branch_boundaries(A, B, C):
    value, _ = be.y_eval(A, B, C)
    assert abs(float(value) - y_grid_max(float(A), float(B), float(C))) <= 1e-6


def test_y_rejects_non_finite():
    with pytest.raises(be.LemmaDomainError):
        be.y_eval(float("nan"), 0, 0)
    with pytest.raises(be.LemmaDomainError):
        be.y_eval(0, float("inf"), 0)


@pytest.mark.parametrize("v,want", [(Fr(23, 32), 2), (0, 2), (2, 6), (-1, 6), (1, 2)])
def test_lemma_c(v, want):
    assert be.lemma_c_bound(v) == want


def test_lemma_c_by_sampling():
    arr = sample_param_arrays(9, 50_000)
    c1, c2, _, _ = coeff_arrays(arr["tau1"], arr["tau2"], arr["tau3"])
    for v in (-0.7, 0.3, Fr(29, 32), 1.6):
        assert np.max(np.abs(c2 - float(v) * c1**2)) <= float(be.lemma_c_bound(v)) + 1e-9


def test_lemma_d():
    assert be.lemma_d_check(Fr(1, 2), Fr(1, 4))
    assert not be.lemma_d_check(Fr(1, 2), Fr(-1, 4))
    assert not be.lemma_d_check(Fr(3, 2), 1)


def test_lemma_e_slack_variant_params():
    ok, slack = be.lemma_e_check(*be.GAMMA4_E_PARAMS_VARIANT)
    assert ok and slack == Fr(-22111611107, 495338913792)


def test_lemma_e_slack_series_params_fails_hypothesis():
    ok, slack = be.lemma_e_check(*be.GAMMA4_E_PARAMS)
    assert not ok and slack == Fr(16558210865, 495338913792)


def test_lemma_e_conclusion_by_sampling():
    # whenever the hypothesis holds, the functional stays within 2
    arr = sample_param_arrays(4, 100_000)
    c = coeff_arrays(arr["tau1"], arr["tau2"], arr["tau3"], arr["tau4"])
    rng = np.random.default_rng(0)
    checked = 0
    base = np.array([float(x) for x in be.GAMMA4_E_PARAMS_VARIANT])
    for _ in range(200):
        g, lam, alpha, beta = base + rng.normal(0, 0.05, 4)
        if not be.lemma_e_check(g, lam, alpha, beta)[0]:
            continue
        checked += 1
        assert np.max(np.abs(be.lemma_e_functional(g, lam, alpha, beta, *c))) <= 2 + 1e-9
    assert checked > 5


def test_lemma_e_domain():
    with pytest.raises(be.LemmaDomainError):
        be.lemma_e_check(0, Fr(1, 2), 1, 0)
    with pytest.raises(be.LemmaDomainError):
        be.lemma_e_check(0, 0, Fr(1, 2), 0)


def test_lemma_f_against_sampling():
    arr = sample_param_arrays(21, 40_000)
    c1, c2, _, _ = coeff_arrays(arr["tau1"], arr["tau2"], arr["tau3"])
    rng = np.random.default_rng(5)
    seen = set()
    for _ in range(150):
        B1 = rng.uniform(0.01, 2)
        B2, B3 = rng.uniform(-1.5, 1.5, 2)
        plus, minus, branches = be.lemma_f_bounds(B1, B2, B3)
        seen.update(branches)
        vals = be.psi_plus(B1, B2, B3, c1, c2)
        assert vals.max() <= plus + 1e-9
        assert (-vals).max() <= minus + 1e-9
    assert {"plus-first", "plus-second", "minus-first", "minus-second"} <= seen


def test_lemma_f_sharp_on_boundary():
    # plus-first attained at c1 = c2 = 2
    B1, B2, B3 = Fr(1, 16), Fr(1, 4), Fr(1, 24)
    plus, _, (pb, _) = be.lemma_f_bounds(B1, B2, B3)
    assert pb == "plus-first"
    assert plus == abs(4 * B2 + 2 * B3) - 2 * B1


def test_lemma_f_domain():
    with pytest.raises(be.LemmaDomainError):
        be.lemma_f_bounds(0, 1, 1)


@pytest.mark.parametrize("variant", ["direct", "inverse"])
@pytest.mark.parametrize("t", [Fr(1, 10), Fr(1, 3), Fr(1, 2), Fr(9, 10), Fr(99, 100)])
def test_hankel_case_analysis_matches_polynomial(variant, t):
    A, B, C, bound = be.hankel_case_analysis(variant, t)
    assert bound == be.PSI_POLY[variant](t) / Fr(36864)


@pytest.mark.parametrize("variant", ["direct", "inverse"])
def test_case_values_and_stitch(variant):
    cases = be.case_values(variant)
    assert cases["I"] == (Fr(73, 36864) if variant == "direct" else Fr(13, 36864))
    assert cases["II"] == cases["III"] == Fr(1, 144)
    assert be.stitched_bound(variant) == Fr(1, 144)


def test_psi_strictly_decreasing():
    t = np.linspace(0, 1, 10_001)[1:]
    assert np.all(be.dpsi(t) < 0) and np.all(be.dpsi1(t) < 0)
    assert be.psi_decreasing("direct") and be.psi_decreasing("inverse")
    assert be.psi(Fr(1, 2)) == Fr(3289, 16)
    assert be.psi1(1) == 13


def test_hankel_domain():
    with pytest.raises(be.LemmaDomainError):
        be.hankel_abc("direct", 1)
    with pytest.raises(be.LemmaDomainError):
        be.hankel_abc("sideways", Fr(1, 2))


def test_theorem_table():
    rows = be.theorem_bounds()
    assert len(rows) == 13
    ids = [r.theorem_id for r in rows]
    assert len(set(ids)) == 13
    assert be.theorem_bound("gamma4").exact == "1/20"
    low = be.theorem_bound("moduli_Gamma_lower")
    assert low.sense == "min" and low.value == pytest.approx(-1 / (2 * 29 ** 0.5))
    with pytest.raises(KeyError):
        be.theorem_bound("gamma9")
