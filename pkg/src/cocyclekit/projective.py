"""Points of the projective line in normalized homogeneous coordinates.

A point is stored as [z : 1] for affine points and [1 : 0] for infinity,
in either scalar mode.  All fuzzy comparisons go through the chordal
(spherical) metric, which treats infinity like any other point; exact-mode
equality is literal coordinate equality after normalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateInputError
from .scalars import APPROX, EXACT, Scalar

CHORDAL_TOL = 1e-8


@dataclass(frozen=True)
class ProjectivePoint:
    z: Scalar
    w: Scalar

    def __post_init__(self):
        self.z._check(self.w)
        if self.z.is_zero() and self.w.is_zero():
            raise DegenerateInputError("[0 : 0] is not a projective point")
        if not self.w.is_zero():
            if self.w != Scalar.one(self.mode):
                object.__setattr__(self, "z", self.z / self.w)
                object.__setattr__(self, "w", Scalar.one(self.mode))
        else:
            if self.z != Scalar.one(self.mode):
                object.__setattr__(self, "z", Scalar.one(self.mode))

    @property
    def mode(self) -> str:
        return self.z.mode

    @staticmethod
    def affine(value: Scalar) -> "ProjectivePoint":
        return ProjectivePoint(value, Scalar.one(value.mode))

    @staticmethod
    def infinity(mode: str = EXACT) -> "ProjectivePoint":
        return ProjectivePoint(Scalar.one(mode), Scalar.zero(mode))

    @staticmethod
    def from_complex(value: complex) -> "ProjectivePoint":
        return ProjectivePoint.affine(Scalar.approx(value))

    @staticmethod
    def exact(re, im=0) -> "ProjectivePoint":
        return ProjectivePoint.affine(Scalar.exact(re, im))

    @property
    def is_infinity(self) -> bool:
        return self.w.is_zero()

    def to_complex(self) -> complex:
        if self.is_infinity:
            raise DegenerateInputError("the point at infinity has no affine value")
        return self.z.to_complex()

    def to_approx(self) -> "ProjectivePoint":
        if self.mode == APPROX:
            return self
        if self.is_infinity:
            return ProjectivePoint.infinity(APPROX)
        return ProjectivePoint.from_complex(self.z.to_complex())

    def same_point(self, other: "ProjectivePoint", tol: float = CHORDAL_TOL) -> bool:
        """Equality in the chordal metric; exact coordinates compare exactly."""
        if self.mode == EXACT and other.mode == EXACT:
            return self == other
        return chordal_distance(self, other) <= tol

    def __str__(self) -> str:
        return "inf" if self.is_infinity else str(self.z)


def chordal_distance(a: ProjectivePoint, b: ProjectivePoint) -> float:
    """|z1 w2 - z2 w1| / (|(z1,w1)| |(z2,w2)|), at most 1, symmetric at infinity."""
    z1, w1 = a.z.to_complex(), a.w.to_complex()
    z2, w2 = b.z.to_complex(), b.w.to_complex()
    num = abs(z1 * w2 - z2 * w1)
    n1 = math.hypot(abs(z1), abs(w1))
    n2 = math.hypot(abs(z2), abs(w2))
    return num / (n1 * n2)


def chordal_to_unit_circle(p: ProjectivePoint) -> float:
    """Chordal distance from p to the nearest point of |z| = 1."""
    if p.is_infinity:
        return 1.0 / math.sqrt(2.0)
    r = abs(p.to_complex())
    return abs(r - 1.0) / (math.sqrt(1.0 + r * r) * math.sqrt(2.0))
