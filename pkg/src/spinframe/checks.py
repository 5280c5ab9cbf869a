"""Exact-value verification suite run by ``spinframe verify``."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np

from . import correlation as corr
from .samplers import bell_experiment
from .su2_core import (
    ALGEBRAIC_TOL,
    DOWN,
    UP,
    Direction,
    Spinor,
    decompose,
    inner_product,
    ray_equivalent,
    spin_state,
)

R = 1.0 / math.sqrt(2.0)

N1 = Direction.planar(0.0)
N2 = Direction.planar(math.pi / 2)
N3 = Direction.planar(-math.pi / 2)

# the three analysers' six states; every printed column vector is among them
FIGURE_VECTORS = {
    "n1_plus": (N1, UP, (1.0, 0.0)),
    "n1_minus": (N1, DOWN, (0.0, -1.0)),
    "n2_plus": (N2, UP, (R, R)),
    "n2_minus": (N2, DOWN, (R, -R)),
    "n3_plus": (N3, UP, (R, -R)),
    "n3_minus": (N3, DOWN, (-R, -R)),
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _vector_check(d, s, expected) -> Tuple[bool, str]:
    got = spin_state(d, s).vector
    err = float(np.max(np.abs(got - np.array(expected))))
    return err <= ALGEBRAIC_TOL, f"max error {err:.1e}"


def _n1_in_basis(basis, expected) -> Tuple[bool, str]:
    c = np.array(decompose(N1, basis, UP))
    err = float(np.max(np.abs(c - np.array(expected))))
    return err <= ALGEBRAIC_TOL, f"coefficients {c.real.round(6).tolist()}, error {err:.1e}"


def _orthogonality() -> Tuple[bool, str]:
    worst = max(
        abs(inner_product(spin_state(N2, s), spin_state(N3, s))) for s in (UP, DOWN)
    )
    return worst <= ALGEBRAIC_TOL, f"max |<n2,s|n3,s>| = {worst:.1e}"


def _n2_minus_is_n3_plus() -> Tuple[bool, str]:
    a, b = spin_state(N2, DOWN), spin_state(N3, UP)
    return a.allclose(b), f"{a.vector.real.tolist()} vs {b.vector.real.tolist()}"


def _sign_representations() -> Tuple[bool, str]:
    ok = ray_equivalent(Spinor(1, 0), Spinor(-1, 0)) and not ray_equivalent(Spinor(1, 0), Spinor(0, 1))
    return ok, "(1,0) ~ (-1,0), (1,0) !~ (0,1)"


def _correlation_grid(points: int) -> Tuple[bool, str]:
    worst = 0.0
    for theta in np.linspace(0.0, math.pi, points):
        e = corr.expected_correlation(theta).value
        table = corr.joint_distribution(theta).correlation()
        worst = max(worst, abs(e + math.cos(theta)), abs(e - table))
    return worst <= ALGEBRAIC_TOL, f"max deviation {worst:.1e} over {points} angles"


def _quantum_vs_vectors() -> Tuple[bool, str]:
    worst = 0.0
    for a in np.linspace(-math.pi, math.pi, 13):
        for b in np.linspace(-math.pi, math.pi, 13):
            di, dj = Direction.planar(a), Direction.planar(b)
            q = corr.quantum_correlation(di, dj).value
            worst = max(worst, abs(q - corr.expected_correlation(di.angle_to(dj)).value))
    return worst <= ALGEBRAIC_TOL, f"max deviation {worst:.1e}"


def _bell_exact() -> Tuple[bool, str]:
    angles = (0.0, math.pi / 3, 2 * math.pi / 3)
    e = [
        corr.quantum_correlation(Direction.planar(x), Direction.planar(y)).value
        for x, y in ((angles[0], angles[1]), (angles[0], angles[2]), (angles[1], angles[2]))
    ]
    q = corr.bell_original(*e)
    lhv = bell_experiment(angles, 1, "lhv-enumerate", 0)
    every = all(corr.bell_original(r.e_ab, r.e_ac, r.e_bc).satisfied for r in lhv.strategies)
    return (not q.satisfied) and every, f"quantum violation {q.violation:+.6g}; all 8 strategies satisfied: {every}"


def _wigner_exact() -> Tuple[bool, str]:
    rep = corr.wigner_inequality(2 * math.pi / 3, math.pi / 3, math.pi / 3)
    ok = (not rep.satisfied) and abs(rep.lhs - 3 / 8) <= ALGEBRAIC_TOL and abs(rep.rhs - 1 / 4) <= ALGEBRAIC_TOL
    return ok, f"lhs {rep.lhs:.6g} vs rhs {rep.rhs:.6g}"


CHECKS: List[Tuple[str, Callable[[], Tuple[bool, str]]]] = [
    *[
        (f"{name} vector", (lambda d=d, s=s, v=v: _vector_check(d, s, v)))
        for name, (d, s, v) in FIGURE_VECTORS.items()
    ],
    ("n1_plus in n2 basis = (1/sqrt2, 1/sqrt2)", lambda: _n1_in_basis(N2, (R, R))),
    ("n1_plus in n3 basis = (1/sqrt2, -1/sqrt2)", lambda: _n1_in_basis(N3, (R, -R))),
    ("<n2,s|n3,s> = 0", _orthogonality),
    ("n2_minus equals n3_plus", _n2_minus_is_n3_plus),
    ("sign representations are one ray", _sign_representations),
    ("E(θ) = −cos θ on 13-point grid", lambda: _correlation_grid(13)),
    ("E(θ) = −cos θ on 181-point grid", lambda: _correlation_grid(181)),
    ("−ni·nj = E(angle(ni, nj))", _quantum_vs_vectors),
    ("Bell: quantum violates, strategies satisfy", _bell_exact),
    ("Wigner: lhs 3/8 > rhs 1/4", _wigner_exact),
]


def run_checks() -> List[CheckResult]:
    out = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, bool(ok), detail))
    return out
