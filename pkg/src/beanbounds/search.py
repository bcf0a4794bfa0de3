"""Seeded global search over the Schur parameters of the class.

Samples are drawn in fixed-size chunks; chunk ``j`` uses child ``j`` of
``SeedSequence(seed)``, so results do not depend on how chunks are spread over
workers.  The best few candidates are then polished coordinate-wise
(bounded Brent/golden-section line searches in ``tau1`` and the polar
coordinates of ``tau2..tau4``) and known extremal witnesses may be injected.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar

from . import functionals as fn
from .bounds_engine import TheoremBound, theorem_bound, theorem_bounds
from .caratheodory import (
    SchwarzParams,
    coeff_arrays,
    extremal_p_lower_params,
    sample_param_arrays,
)
from .class_btb import a_from_c, extremal_params

EXCEEDANCE_TOL = 1e-12
ATTAINMENT_TOL = 1e-6
CHUNK_SIZE = 1 << 16
TOP_K = 8

CONFIRMED = "confirmed"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"


class UnknownFunctional(KeyError):
    pass


# --- vectorized objectives ---------------------------------------------------

def _a(t1, t2, t3, t4):
    return a_from_c(*coeff_arrays(t1, t2, t3, t4))


def _gamma(n):
    def f(t1, t2, t3, t4):
        return np.abs(fn.gamma_from_a(*_a(t1, t2, t3, t4))[n - 1])
    return f


def _Gamma(n):
    def f(t1, t2, t3, t4):
        a2, a3, a4, _ = _a(t1, t2, t3, None)
        return np.abs(fn.gamma_inv_from_a(a2, a3, a4)[n - 1])
    return f


def _hankel(t1, t2, t3, t4):
    a2, a3, a4, _ = _a(t1, t2, t3, None)
    return np.abs(fn.hankel_log_from_a(a2, a3, a4))


def _hankel_inv(t1, t2, t3, t4):
    a2, a3, a4, _ = _a(t1, t2, t3, None)
    return np.abs(fn.hankel_inv_log_from_a(a2, a3, a4))


def _zalcman(t1, t2, t3, t4):
    a2, a3, a4, _ = _a(t1, t2, t3, None)
    return np.abs(fn.zalcman_from_a(a2, a3, a4))


def _moduli_gamma(t1, t2, t3, t4):
    g1, g2, _, _ = fn.gamma_from_a(*_a(t1, t2, t3, None))
    return np.abs(g2) - np.abs(g1)


def _moduli_Gamma(t1, t2, t3, t4):
    a2, a3, a4, _ = _a(t1, t2, t3, None)
    G1, G2, _ = fn.gamma_inv_from_a(a2, a3, a4)
    return np.abs(G2) - np.abs(G1)


OBJECTIVES: dict[str, Callable] = {
    "gamma1": _gamma(1),
    "gamma2": _gamma(2),
    "gamma3": _gamma(3),
    "gamma4": _gamma(4),
    "hankel_log": _hankel,
    "Gamma1": _Gamma(1),
    "Gamma2": _Gamma(2),
    "hankel_inv_log": _hankel_inv,
    "zalcman_23": _zalcman,
    "moduli_gamma_upper": _moduli_gamma,
    "moduli_gamma_lower": _moduli_gamma,
    "moduli_Gamma_upper": _moduli_Gamma,
    "moduli_Gamma_lower": _moduli_Gamma,
}

FLAGS = {"gamma4": ("schur-c4",)}


def evaluate(theorem_id: str, params: SchwarzParams) -> float:
    """Objective value of one parameter point."""
    t4 = 0j if params.tau4 is None else params.tau4
    arr = [np.array([complex(x)]) for x in (params.tau2, params.tau3, t4)]
    return float(OBJECTIVES[theorem_id](np.array([float(params.tau1)]), *arr)[0])


def witnesses() -> list[tuple[str, SchwarzParams]]:
    out = [(f"extremal-{k}", extremal_params(k)) for k in range(1, 5)]
    out += [("lower-gamma", extremal_p_lower_params("gamma")),
            ("lower-Gamma", extremal_p_lower_params("Gamma"))]
    return out


# --- config and report -------------------------------------------------------

@dataclass(frozen=True)
class SearchConfig:
    functional_id: str
    seed: int = 0
    samples: int = 100_000
    refine_iters: int = 3
    include_extremals: bool = True
    workers: int = 1
    chunk_size: int = CHUNK_SIZE

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.refine_iters < 0:
            raise ValueError("refine_iters must be non-negative")
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be at least 1")


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one search.

    ``attained`` is the extreme objective value found, in the direction of
    ``sense`` (a maximum for upper bounds, a minimum for lower bounds).
    ``gap`` is the signed distance to the bound, positive inside it.
    """

    theorem_id: str
    sense: str
    sharp_bound: float
    sharp_bound_exact: str
    attained: float
    attaining_params: dict | str
    attained_by: str
    verdict: str
    tolerances: tuple
    samples: int
    seed: int
    violations: int
    flags: tuple = field(default_factory=tuple)

    @property
    def gap(self) -> float:
        if self.sense == "max":
            return self.sharp_bound - self.attained
        return self.attained - self.sharp_bound

    def to_json(self) -> dict:
        d = asdict(self)
        d["tolerances"] = {"attainment": self.tolerances[0],
                           "exceedance": self.tolerances[1]}
        d["flags"] = list(self.flags)
        d["gap"] = self.gap
        return d

    def to_json_line(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def verdict_for(sense: str, bound: float, attained: float,
                attainment_tol=ATTAINMENT_TOL, exceedance_tol=EXCEEDANCE_TOL) -> str:
    gap = bound - attained if sense == "max" else attained - bound
    if gap < -exceedance_tol:
        return VIOLATED
    if gap <= attainment_tol:
        return CONFIRMED
    return INCONCLUSIVE


# --- sampling ----------------------------------------------------------------

def _chunk_bounds(samples: int, chunk_size: int):
    return [(s, min(s + chunk_size, samples)) for s in range(0, samples, chunk_size)]


def _scan_chunk(args):
    """Evaluate one chunk; return its top candidates and violation count."""
    theorem_id, seed, j, start, stop = args
    tb = theorem_bound(theorem_id)
    sign = 1.0 if tb.sense == "max" else -1.0
    child = np.random.SeedSequence(seed).spawn(j + 1)[j]
    p = sample_param_arrays(child, stop - start)
    vals = OBJECTIVES[theorem_id](p["tau1"], p["tau2"], p["tau3"], p["tau4"])
    score = sign * vals
    violations = int(np.count_nonzero(score > sign * tb.value + EXCEEDANCE_TOL))
    k = min(TOP_K, score.size)
    top = np.argpartition(-score, k - 1)[:k]
    cands = [
        (float(score[i]), start + int(i),
         (float(p["tau1"][i]), complex(p["tau2"][i]), complex(p["tau3"][i]),
          complex(p["tau4"][i])))
        for i in top
    ]
    return cands, violations


def _to_coords(t1, t2, t3, t4):
    out = [t1]
    for t in (t2, t3, t4):
        out += [abs(t), math.atan2(t.imag, t.real)]
    return out


def _from_coords(x):
    taus = [complex(x[i] * math.cos(x[i + 1]), x[i] * math.sin(x[i + 1]))
            for i in (1, 3, 5)]
    return (x[0], *taus)


_BOXES = [(0.0, 1.0)] + [(0.0, 1.0), (-math.pi, math.pi)] * 3


def _score_point(theorem_id, sign, taus):
    t1, t2, t3, t4 = taus
    v = OBJECTIVES[theorem_id](np.array([t1]), np.array([t2]),
                               np.array([t3]), np.array([t4]))
    return sign * float(v[0])


def refine(theorem_id: str, start: tuple, iters: int) -> tuple[float, tuple]:
    """Coordinate-wise polishing of one candidate inside the parameter box.

    Returns ``(score, taus)`` where ``score`` is the sense-signed objective.
    """
    sign = 1.0 if theorem_bound(theorem_id).sense == "max" else -1.0
    x = _to_coords(*start)
    best = _score_point(theorem_id, sign, _from_coords(x))
    for _ in range(iters):
        improved = False
        for i, (lo, hi) in enumerate(_BOXES):
            def neg(v, i=i):
                y = list(x)
                y[i] = v
                return -_score_point(theorem_id, sign, _from_coords(y))

            trials = [lo, hi]
            res = minimize_scalar(neg, bounds=(lo, hi), method="bounded",
                                  options={"xatol": 1e-10})
            trials.append(float(res.x))
            for v in trials:
                s = -neg(v)
                if s > best:
                    best, x[i], improved = s, v, True
        if not improved:
            break
    return best, _from_coords(x)


def maximize_functional(cfg: SearchConfig) -> BoundReport:
    """Search the parameter space for the extreme value of one functional."""
    if cfg.functional_id not in OBJECTIVES:
        raise UnknownFunctional(cfg.functional_id)
    tb: TheoremBound = theorem_bound(cfg.functional_id)
    sign = 1.0 if tb.sense == "max" else -1.0

    jobs = [(cfg.functional_id, cfg.seed, j, s, e)
            for j, (s, e) in enumerate(_chunk_bounds(cfg.samples, cfg.chunk_size))]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_scan_chunk, jobs))
    else:
        results = [_scan_chunk(job) for job in jobs]

    violations = sum(v for _, v in results)
    cands = sorted((c for cs, _ in results for c in cs), key=lambda c: (-c[0], c[1]))
    cands = cands[:TOP_K]

    best_score, best_params, best_by = cands[0][0], cands[0][2], "sample"

    if cfg.refine_iters > 0:
        for score, _, taus in cands:
            s, t = refine(cfg.functional_id, taus, cfg.refine_iters)
            if s > best_score:
                best_score, best_params, best_by = s, t, "refined"
        if best_score > sign * tb.value + EXCEEDANCE_TOL:
            violations += 1

    attaining = SchwarzParams(*best_params).to_json()
    if cfg.include_extremals:
        for tag, params in witnesses():
            s = sign * evaluate(cfg.functional_id, params)
            if s > sign * tb.value + EXCEEDANCE_TOL:
                violations += 1
            if s > best_score:
                best_score, attaining, best_by = s, tag, "witness"

    attained = sign * best_score
    verdict = verdict_for(tb.sense, tb.value, attained)
    if violations and verdict != VIOLATED:
        verdict = VIOLATED
    return BoundReport(
        theorem_id=tb.theorem_id,
        sense=tb.sense,
        sharp_bound=tb.value,
        sharp_bound_exact=tb.exact,
        attained=attained,
        attaining_params=attaining,
        attained_by=best_by,
        verdict=verdict,
        tolerances=(ATTAINMENT_TOL, EXCEEDANCE_TOL),
        samples=cfg.samples,
        seed=cfg.seed,
        violations=violations,
        flags=FLAGS.get(tb.theorem_id, ()),
    )


def verify_all(seed: int = 0, samples: int = 100_000, refine_iters: int = 3,
               include_extremals: bool = True, workers: int = 1,
               functionals: list[str] | None = None) -> list[BoundReport]:
    ids = [tb.theorem_id for tb in theorem_bounds()]
    if functionals:
        unknown = [f for f in functionals if f not in OBJECTIVES]
        if unknown:
            raise UnknownFunctional(", ".join(unknown))
        ids = [i for i in ids if i in functionals]
    return [
        maximize_functional(SearchConfig(i, seed, samples, refine_iters,
                                         include_extremals, workers))
        for i in ids
    ]


def all_confirmed(reports: list[BoundReport]) -> bool:
    return all(r.verdict == CONFIRMED for r in reports)


def any_violated(reports: list[BoundReport]) -> bool:
    return any(r.verdict == VIOLATED for r in reports)


def summary_csv(reports: list[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["theorem_id", "bound", "attained", "gap", "verdict"])
    for r in reports:
        w.writerow([r.theorem_id, repr(r.sharp_bound), repr(r.attained),
                    repr(r.gap), r.verdict])
    return buf.getvalue()
