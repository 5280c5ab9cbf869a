"""Closed-form singlet statistics and Bell/Wigner inequality evaluators.

Outcomes are labelled lambda in {+1, -1}. For analysers at relative angle
``theta`` the singlet gives lambda_1 = +/-1 with probability 1/2 each, and
then lambda_2 = -lambda_1 with probability cos^2(theta/2). Everything here is
exact arithmetic on that model; the samplers are checked against it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, Tuple

from .su2_core import DomainError, Direction

OUTCOMES = (+1, -1)

# margins this close to zero are round-off on an exact tie
_TIE_TOL = 1e-12


@dataclass(frozen=True)
class ConditionalTable:
    """P(lambda_2 | lambda_1) at relative angle ``theta``."""

    p_opposite: float
    p_same: float
    theta: float

    def __call__(self, lam2: int, lam1: int) -> float:
        return self.p_opposite if lam2 == -lam1 else self.p_same


@dataclass(frozen=True)
class JointTable:
    """P(lambda_1, lambda_2) over the four outcome cells."""

    pp: float
    pm: float
    mp: float
    mm: float

    def __getitem__(self, cell: Tuple[int, int]) -> float:
        lam1, lam2 = cell
        return {
            (1, 1): self.pp,
            (1, -1): self.pm,
            (-1, 1): self.mp,
            (-1, -1): self.mm,
        }[(lam1, lam2)]

    def items(self) -> Iterator[Tuple[Tuple[int, int], float]]:
        for cell in product(OUTCOMES, OUTCOMES):
            yield cell, self[cell]

    def as_dict(self) -> Dict[Tuple[int, int], float]:
        return dict(self.items())

    def marginal1(self) -> Tuple[float, float]:
        return self.pp + self.pm, self.mp + self.mm

    def marginal2(self) -> Tuple[float, float]:
        return self.pp + self.mp, self.pm + self.mm

    def correlation(self) -> float:
        """Sum of lambda_1 * lambda_2 * P(lambda_1, lambda_2)."""
        return sum(l1 * l2 * p for (l1, l2), p in self.items())


@dataclass(frozen=True)
class CorrelationValue:
    value: float

    def __post_init__(self):
        if not -1.0 - _TIE_TOL <= self.value <= 1.0 + _TIE_TOL:
            raise DomainError(f"correlation must lie in [-1, 1], got {self.value!r}")

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class InequalityReport:
    lhs: float
    rhs: float
    margin: float
    satisfied: bool

    @classmethod
    def compare(cls, lhs: float, rhs: float) -> "InequalityReport":
        margin = rhs - lhs
        if abs(margin) <= _TIE_TOL:
            margin = 0.0
        return cls(float(lhs), float(rhs), float(margin), margin >= 0.0)

    @property
    def violation(self) -> float:
        """Amount by which lhs exceeds rhs (negative when satisfied)."""
        return -self.margin


def _check_theta(theta: float) -> float:
    if not math.isfinite(theta):
        raise DomainError(f"angle must be finite, got {theta!r}")
    return float(theta)


def conditional_distribution(theta: float) -> ConditionalTable:
    theta = _check_theta(theta)
    p_opp = math.cos(theta / 2.0) ** 2
    p_same = math.sin(theta / 2.0) ** 2
    return ConditionalTable(p_opp, p_same, theta)


def joint_distribution(theta: float) -> JointTable:
    """Singlet joint law P(l1, l2) = P(l1) P(l2 | l1) with P(l1) = 1/2."""
    cond = conditional_distribution(theta)
    cells = {
        (l1, l2): 0.5 * cond(l2, l1) for l1, l2 in product(OUTCOMES, OUTCOMES)
    }
    return JointTable(cells[1, 1], cells[1, -1], cells[-1, 1], cells[-1, -1])


def expected_correlation(theta: float) -> CorrelationValue:
    """E(l1 l2) = -cos(theta)."""
    return CorrelationValue(-math.cos(_check_theta(theta)))


def quantum_correlation(ni: Direction, nj: Direction) -> CorrelationValue:
    """<sigma_i sigma_j> on the singlet: -ni . nj."""
    return CorrelationValue(-min(1.0, max(-1.0, ni.dot(nj))))


def plus_plus_probability(theta: float) -> float:
    """Singlet P(+, +) at relative angle ``theta``: (1/2) sin^2(theta/2)."""
    return 0.5 * math.sin(_check_theta(theta) / 2.0) ** 2


def _check_correlation(e) -> float:
    e = float(e)
    if not -1.0 - _TIE_TOL <= e <= 1.0 + _TIE_TOL:
        raise DomainError(f"correlation must lie in [-1, 1], got {e!r}")
    return e


def bell_original(e_ab, e_ac, e_bc) -> InequalityReport:
    """Bell's three-setting bound |E(a,b) - E(a,c)| <= 1 + E(b,c)."""
    e_ab, e_ac, e_bc = (_check_correlation(e) for e in (e_ab, e_ac, e_bc))
    return InequalityReport.compare(abs(e_ab - e_ac), 1.0 + e_bc)


def wigner_from_probabilities(p_ab: float, p_ac: float, p_cb: float) -> InequalityReport:
    """Wigner's bound P(+,+|a,b) <= P(+,+|a,c) + P(+,+|c,b)."""
    return InequalityReport.compare(p_ab, p_ac + p_cb)


def wigner_inequality(theta_ab: float, theta_ac: float, theta_cb: float) -> InequalityReport:
    return wigner_from_probabilities(
        plus_plus_probability(theta_ab),
        plus_plus_probability(theta_ac),
        plus_plus_probability(theta_cb),
    )
