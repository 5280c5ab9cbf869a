"""Exact spin-1/2 algebra: directions, spinors |n,+/->, SU(2) rotations.

Conventions
-----------
A planar direction is an angle ``alpha`` measured from the reference (z) axis
in the x-z plane, normalised to (-pi, pi]. Positive ``alpha`` is the clockwise
sense used when the second analyser is drawn rotated away from the first.
The spin states along such a direction are::

    |n(alpha), +> = ( cos(alpha/2),  sin(alpha/2) )
    |n(alpha), -> = ( sin(alpha/2), -cos(alpha/2) )

This choice reproduces the textbook column vectors exactly, including
|n(pi/2), -> == |n(-pi/2), +>: the same ray read as "down" from one frame and
"up" from another.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

ALGEBRAIC_TOL = 1e-12
TRANSCENDENTAL_TOL = 1e-10

UP = +1
DOWN = -1


class DomainError(ValueError):
    """Raised when an input lies outside the domain of an operation."""


def spin_sign(s: int) -> int:
    if s not in (UP, DOWN):
        raise DomainError(f"spin sign must be +1 or -1, got {s!r}")
    return int(s)


def normalize_angle(alpha: float) -> float:
    """Wrap an angle into (-pi, pi]."""
    if not math.isfinite(alpha):
        raise DomainError(f"angle must be finite, got {alpha!r}")
    if -math.pi < alpha <= math.pi:
        return float(alpha)
    wrapped = math.remainder(alpha, 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped


@dataclass(frozen=True)
class Direction:
    """A measurement axis, stored as a unit 3-vector.

    ``alpha`` is set for directions in the x-z plane and is used verbatim by
    :func:`spin_state`, so planar states carry no round-off from the vector
    form.
    """

    x: float
    y: float
    z: float
    alpha: Optional[float] = None

    def __post_init__(self):
        v = (self.x, self.y, self.z)
        if not all(math.isfinite(c) for c in v):
            raise DomainError(f"direction components must be finite, got {v}")
        norm = math.sqrt(sum(c * c for c in v))
        if abs(norm - 1.0) > ALGEBRAIC_TOL:
            raise DomainError(f"direction must be a unit vector, |n| = {norm!r}")
        if self.alpha is None:
            if self.y == 0.0:
                # +0.0 folds -0.0 in x, which would put atan2 on the wrong side of the cut
                object.__setattr__(
                    self, "alpha", normalize_angle(math.atan2(self.x + 0.0, self.z))
                )
        elif (
            self.y != 0.0
            or abs(math.sin(self.alpha) - self.x) > ALGEBRAIC_TOL
            or abs(math.cos(self.alpha) - self.z) > ALGEBRAIC_TOL
        ):
            raise DomainError("planar angle does not match the direction vector")

    @classmethod
    def planar(cls, alpha: float) -> "Direction":
        a = normalize_angle(alpha)
        return cls(math.sin(a), 0.0, math.cos(a), a)

    @classmethod
    def from_vector(cls, v: Iterable[float]) -> "Direction":
        x, y, z = (float(c) for c in v)
        return cls(x, y + 0.0, z)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @property
    def is_planar(self) -> bool:
        return self.alpha is not None

    def dot(self, other: "Direction") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def angle_to(self, other: "Direction") -> float:
        """Angle between two axes, clamped so |dot| -> 1 cannot leave acos's domain."""
        return math.acos(min(1.0, max(-1.0, self.dot(other))))


@dataclass(frozen=True)
class Spinor:
    """Normalised two-component state in the fixed z basis."""

    up: complex
    down: complex

    def __post_init__(self):
        object.__setattr__(self, "up", complex(self.up))
        object.__setattr__(self, "down", complex(self.down))
        for c in (self.up, self.down):
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise DomainError("spinor amplitudes must be finite")
        norm2 = abs(self.up) ** 2 + abs(self.down) ** 2
        if abs(norm2 - 1.0) > ALGEBRAIC_TOL:
            raise DomainError(f"spinor must be normalised, |psi|^2 = {norm2!r}")

    @classmethod
    def from_array(cls, v) -> "Spinor":
        a = np.asarray(v, dtype=complex).reshape(2)
        return cls(a[0], a[1])

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.up, self.down], dtype=complex)

    def __neg__(self) -> "Spinor":
        return Spinor(-self.up, -self.down)

    def allclose(self, other: "Spinor", tol: float = ALGEBRAIC_TOL) -> bool:
        """Componentwise equality (phase-sensitive, unlike :func:`ray_equivalent`)."""
        return abs(self.up - other.up) <= tol and abs(self.down - other.down) <= tol


@dataclass(frozen=True, eq=False)
class UnitaryOp:
    """A 2x2 element of SU(2)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise DomainError(f"SU(2) element must be 2x2, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise DomainError("SU(2) entries must be finite")
        if np.max(np.abs(m.conj().T @ m - np.eye(2))) > ALGEBRAIC_TOL:
            raise DomainError("matrix is not unitary")
        if abs(np.linalg.det(m) - 1.0) > ALGEBRAIC_TOL:
            raise DomainError("matrix determinant is not 1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __eq__(self, other):
        if not isinstance(other, UnitaryOp):
            return NotImplemented
        return bool(np.array_equal(self.matrix, other.matrix))

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def __matmul__(self, other):
        if isinstance(other, UnitaryOp):
            return UnitaryOp(self.matrix @ other.matrix)
        if isinstance(other, Spinor):
            return Spinor.from_array(self.matrix @ other.vector)
        return NotImplemented

    def __neg__(self) -> "UnitaryOp":
        return UnitaryOp(-self.matrix)

    @property
    def dagger(self) -> "UnitaryOp":
        return UnitaryOp(self.matrix.conj().T)

    def apply(self, s: Spinor) -> Spinor:
        return self @ s


def spin_state(d: Direction, s: int) -> Spinor:
    """Return |n, s> for direction ``d`` and sign ``s`` in {+1, -1}."""
    s = spin_sign(s)
    if d.is_planar:
        c, sn = math.cos(d.alpha / 2.0), math.sin(d.alpha / 2.0)
        return Spinor(c, sn) if s == UP else Spinor(sn, -c)
    # Bloch construction; reduces to the planar formula when y == 0
    polar = math.acos(min(1.0, max(-1.0, d.z)))
    azimuth = math.atan2(d.y, d.x)
    c, sn = math.cos(polar / 2.0), math.sin(polar / 2.0)
    phase = complex(math.cos(azimuth), math.sin(azimuth))
    if s == UP:
        return Spinor(c, phase * sn)
    return Spinor(phase.conjugate() * sn, -c)


def rotation(theta: float) -> UnitaryOp:
    """Real planar SU(2) rotation by ``theta``: maps |n(a), s> to +/-|n(a + theta), s>."""
    if not math.isfinite(theta):
        raise DomainError(f"rotation angle must be finite, got {theta!r}")
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return UnitaryOp(np.array([[c, -s], [s, c]], dtype=complex))


def inner_product(a: Spinor, b: Spinor) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    return a.up.conjugate() * b.up + a.down.conjugate() * b.down


def decompose(target: Direction, basis: Direction, s: int = UP) -> Tuple[complex, complex]:
    """Coefficients (c+, c-) with |target, s> = c+ |basis, +> + c- |basis, ->."""
    psi = spin_state(target, s)
    return (
        inner_product(spin_state(basis, UP), psi),
        inner_product(spin_state(basis, DOWN), psi),
    )


def transition_probability(a: Spinor, b: Spinor) -> float:
    """Born-rule probability |<a|b>|^2, clipped to [0, 1]."""
    return min(1.0, max(0.0, abs(inner_product(a, b)) ** 2))


def ray_equivalent(a: Spinor, b: Spinor, tol: float = ALGEBRAIC_TOL) -> bool:
    """True when ``a`` and ``b`` differ only by a global phase."""
    return abs(abs(inner_product(a, b)) - 1.0) <= tol
